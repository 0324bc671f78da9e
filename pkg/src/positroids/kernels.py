"""Backend selection for the bitset kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``POSITROIDS_PURE_PYTHON`` is set to a non-empty value,
the pure-Python module is used. Both expose the same functions.
"""

import os

from . import _pykernels

if os.environ.get("POSITROIDS_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND

pack = _impl.pack
rank = _impl.rank
is_independent = _impl.is_independent
exchange_violation = _impl.exchange_violation
circuits = _impl.circuits
minor_masks = _impl.minor_masks
bases_from_circuits = _impl.bases_from_circuits
envelope_members = _impl.envelope_members

bits = _pykernels.bits
compress = _pykernels.compress


def available_backends():
    """Map of backend name to module for every backend importable here."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
