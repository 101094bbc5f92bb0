"""Compute-backend selection.

Two interchangeable kernel namespaces exist: ``numba`` (compiled, the
default when importable) and ``numpy`` (vectorised fallback).  The startup
default comes from the ``MOCCA_BACKEND`` environment variable; ``use()``
switches temporarily, ``set_backend()`` permanently.

Backends are loaded lazily so that ``MOCCA_BACKEND=numpy`` never imports
numba at all — that is the escape hatch for machines where numba is missing
or broken.
"""

import importlib
import os
from contextlib import contextmanager

from .errors import BackendError

ENV_VAR = "MOCCA_BACKEND"
BACKEND_NAMES = ("numba", "numpy")

_MODULES = {}
_active = None


def _load(name):
    if name not in BACKEND_NAMES:
        raise BackendError(
            f"unknown backend {name!r}; expected one of {', '.join(BACKEND_NAMES)}"
        )
    if name not in _MODULES:
        try:
            _MODULES[name] = importlib.import_module(f"._kernels_{name}", __package__)
        except ImportError as exc:
            raise BackendError(f"backend {name!r} is unavailable: {exc}") from exc
    return _MODULES[name]


def available_backends():
    """Names of backends that import cleanly on this machine."""
    out = []
    for name in BACKEND_NAMES:
        try:
            _load(name)
        except BackendError:
            continue
        out.append(name)
    return tuple(out)


def _default():
    env = os.environ.get(ENV_VAR)
    if env:
        return _load(env.strip().lower())
    try:
        return _load("numba")
    except BackendError:
        return _load("numpy")


def get():
    """The active kernel namespace (selecting the default on first use)."""
    global _active
    if _active is None:
        _active = _default()
    return _active


def active_backend():
    return get().NAME


def set_backend(name):
    global _active
    _active = _load(name)


@contextmanager
def use(name):
    """Temporarily switch backends (restores the previous one on exit)."""
    global _active
    previous = get()
    _active = _load(name)
    try:
        yield _active
    finally:
        _active = previous


def warmup(substeps=8):
    """Run every kernel once so compilation never lands in a timed region."""
    kern = get()
    kern.mocca_eval(1.4, 1.4, 4.0, 1.0, 0.5, 0.25, 0.25, 0.25,
                    3.0, substeps, 1e-9)
    kern.unicircle_eval(3.0, 4.0, 1.0, 0.25, 0.25, substeps)
    kern.multicircle_eval(3, 1.4, 3, 1.4, 3.0, 4.0, 1.0, 0.5,
                          0.25, 0.25, 0.25, substeps)
    import numpy as np

    zero = np.zeros(2)
    one = np.ones(2)
    kern.mc_count(zero, zero, one, zero, 2.5, 1.1, 2.5, 1.1)
    kern.poc_quadrature(0.0, 0.0, 0.5, 0.5, 3.0, substeps)
    return kern.NAME
