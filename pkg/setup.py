"""Build script: compiles the optional Cython hot-loop extension.

The package works without the extension (pure-Python kernels are selected at
import time), so a failed compile downgrades to a warning instead of aborting
the install.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("edgehost: Cython not available, building without compiled kernels",
              file=sys.stderr)
        return []
    ext = Extension(
        "edgehost._kernels",
        ["src/edgehost/_kernels.pyx"],
    )
    return cythonize([ext], language_level=3)


try:
    setup(ext_modules=extensions())
except SystemExit:
    raise
except Exception as exc:  # noqa: BLE001 - any compile failure falls back to pure Python
    print(f"edgehost: compiled kernels unavailable ({exc}); installing pure-Python build",
          file=sys.stderr)
    setup(ext_modules=[])
