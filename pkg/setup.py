"""Build script for the optional MPFR-backed Cython kernels.

The extension is optional. When Cython, a C compiler or the MPFR/GMP
headers are missing, the package installs without it and falls back to
the pure-Python kernels at import time.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat compilation failures of the kernel extension as non-fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        sys.stderr.write(
            "warning: compiled kernels not built (%s); "
            "the pure-Python fallback will be used\n" % exc
        )


def extensions():
    if os.environ.get("JACOBIZEROS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "jacobizeros._kernels",
        sources=["src/jacobizeros/_kernels.pyx"],
        libraries=["mpfr", "gmp", "m"],
        extra_compile_args=["-O2"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
        quiet=True,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
