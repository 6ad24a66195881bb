"""Build the optional compiled kernels.

The extension is marked optional: when Cython or a C compiler is missing
the package installs anyway and runs on the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("paretocert._ckernels", ["src/paretocert/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
