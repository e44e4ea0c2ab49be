"""Build the optional compiled GF(p) kernel.

The package is fully functional without it (a numpy fallback with the same API
is selected at import time), so any failure here degrades to a pure-Python
install instead of aborting.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "arquiver._gfcore",
                ["src/arquiver/_gfcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except Exception:
    extensions = []

setup(ext_modules=extensions)
