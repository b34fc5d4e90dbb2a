from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "adele_forge._kernels._speedups",
                ["src/adele_forge/_kernels/_speedups.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    # The package falls back to the pure-Python kernels at import time.
    extensions = []

setup(ext_modules=extensions)
