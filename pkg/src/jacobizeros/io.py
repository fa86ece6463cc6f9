"""Atomic file output and number formatting for CSV/JSON exports."""

from __future__ import annotations

import contextlib
import os
import tempfile

import mpmath

__all__ = ["atomic_open", "fmt", "digits_for"]


@contextlib.contextmanager
def atomic_open(path, mode: str = "w"):
    """Write to a temporary file in the target directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, mode, newline="" if "b" not in mode else None) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def digits_for(bits: int) -> int:
    """Decimal digits carried by ``bits`` binary digits, capped at 60."""
    return max(17, min(60, int(bits * 0.30103)))


def fmt(x, digits: int = 20) -> str:
    """Format a real (mpf or float) for CSV output."""
    if hasattr(x, "_mpf_"):
        return mpmath.nstr(x, digits, strip_zeros=False) if x else "0.0"
    return repr(float(x))
