"""Build script: compiles the optional matching kernel extension.

The package works without the extension (a pure-Python kernel is selected
at import time), but the compiled kernel is 1-2 orders of magnitude faster
and is what makes large subgradient runs practical.  Set PLANARCC_NO_EXT=1
to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PLANARCC_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "planarcc.matching._blossom_cy",
                    ["src/planarcc/matching/_blossom_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
