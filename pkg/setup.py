"""Build the optional compiled kernels; fall back to pure Python on failure."""
from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python")


def ext_modules():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/hexalink/_kernels/_fast.pyx"],
        compiler_directives={"language_level": 3},
        quiet=True,
    )


setup(ext_modules=ext_modules(), cmdclass={"build_ext": OptionalBuildExt})
