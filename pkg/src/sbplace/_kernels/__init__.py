"""Kernel selection: compiled extension when available, NumPy fallback
otherwise.  Set SBPLACE_NO_EXT=1 to force the fallback."""

import os

if os.environ.get("SBPLACE_NO_EXT"):
    from ._fallback import csr_matvec, rk4_wave_run
    BACKEND = "fallback"
else:
    try:
        from ._core import csr_matvec, rk4_wave_run
        BACKEND = "compiled"
    except ImportError:
        from ._fallback import csr_matvec, rk4_wave_run
        BACKEND = "fallback"

__all__ = ["csr_matvec", "rk4_wave_run", "BACKEND"]
