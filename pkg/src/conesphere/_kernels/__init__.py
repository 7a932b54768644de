"""Solver kernel backends: compiled Cython core with a pure-numpy fallback.

The compiled extension is selected automatically when the build produced
it; ``use()`` switches backends explicitly (used by the backend benchmark
and by tests that exercise both implementations).
"""

from . import _pure

try:
    from . import _core
except ImportError:
    _core = None

_active = _core if _core is not None else _pure


def available_backends() -> tuple:
    return ("compiled", "pure") if _core is not None else ("pure",)


def backend_name() -> str:
    return "compiled" if _active is _core else "pure"


def get_backend(name: str):
    if name == "pure":
        return _pure
    if name == "compiled":
        if _core is None:
            raise ValueError("compiled backend is not available")
        return _core
    raise ValueError(f"unknown backend {name!r}")


def use(name: str) -> None:
    """Switch the active backend ('compiled' or 'pure')."""
    global _active
    _active = get_backend(name)


def active():
    return _active
