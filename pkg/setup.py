"""Build script: compiles the optional ODE transport kernel.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so a missing Cython or C compiler only costs
speed, not functionality.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "logorbi._hyp_core",
                ["src/logorbi/_hyp_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
