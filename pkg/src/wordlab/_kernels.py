"""Kernel dispatch: compiled extension when importable, numpy fallback otherwise.

Set ``WORDLAB_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels as pure

compiled = None
if not os.environ.get("WORDLAB_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

z_array = impl.z_array
first_repetition = impl.first_repetition
greedy_extract = impl.greedy_extract
