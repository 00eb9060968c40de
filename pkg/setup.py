"""Build hook for the optional compiled scan kernel.

The package is fully functional without the extension; matching falls back
to the pure-Python kernel at import time. Set SEMLABEL_NO_EXT=1 to skip
compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SEMLABEL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "semlabel.corpus_matcher._scan_cy",
                    ["src/semlabel/corpus_matcher/_scan_cy.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
