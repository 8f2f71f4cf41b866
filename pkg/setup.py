"""Build the optional Cython kernel; the package falls back to pure Python without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("TORICCONTRACT_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/toriccontract/_kernel_c.pyx"],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
