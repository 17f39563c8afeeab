"""Optional compiled kernels.

Build in place with ``python setup.py build_ext --inplace``; an editable
install (``pip install -e . --no-build-isolation``) builds them too.  If
Cython or a compiler is missing the package still installs and runs on the
pure-Python kernels.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ROBINSPEC_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "robinspec._kernels",
                    ["src/robinspec/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
