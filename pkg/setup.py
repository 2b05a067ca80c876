from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off: no FMA contraction, so the compiled kernels stay
# bitwise identical to the pure-Python float path.
extensions = [
    Extension(
        "enokit._speedups",
        ["src/enokit/_speedups.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
