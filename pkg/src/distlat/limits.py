import os

ENV_VAR = "LATTICE_MAX_ELEMENTS"


def cap(default: int) -> int:
    """Return the size cap, honouring the ``LATTICE_MAX_ELEMENTS`` override."""
    value = os.environ.get(ENV_VAR)
    if value is None or not value.strip():
        return default
    return int(value)
