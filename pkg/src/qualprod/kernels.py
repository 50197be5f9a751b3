"""Selects the compiled cycle-search kernel, falling back to pure Python.

Set ``QUALPROD_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _cycles_py

MODE_ALL = _cycles_py.MODE_ALL
MODE_FIRST_EVEN = _cycles_py.MODE_FIRST_EVEN
MODE_FIRST_LONG = _cycles_py.MODE_FIRST_LONG

python_find_cycles = _cycles_py.find_cycles
compiled_find_cycles = None

if not os.environ.get("QUALPROD_PURE_PYTHON"):
    try:
        from ._cycles import find_cycles as compiled_find_cycles
    except ImportError:  # extension not built
        compiled_find_cycles = None

find_cycles = compiled_find_cycles or python_find_cycles
BACKEND = "compiled" if compiled_find_cycles is not None else "python"
