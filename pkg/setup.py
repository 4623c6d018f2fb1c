"""Build the optional compiled kernels.

The package works without them: ``wordlab._kernels`` falls back to the
pure-Python implementations when ``wordlab._ckernels`` cannot be imported.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # no Cython: pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("wordlab._ckernels", ["src/wordlab/_ckernels.pyx"], optional=True)],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
