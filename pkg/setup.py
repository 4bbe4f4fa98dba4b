import os

from setuptools import setup

ext_modules = []
if os.environ.get("MODALTOPOS_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension(
                "modaltopos._nat_kernel",
                ["src/modaltopos/_nat_kernel.pyx"],
                extra_compile_args=["-O3"],
            )],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback is selected at import time; the compiled
        # kernel is an optimisation, not a requirement.
        ext_modules = []

setup(ext_modules=ext_modules)
