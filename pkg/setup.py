## To install locally: python setup.py build && python setup.py install
## (If there are problems with installation of the documentation, it may be that
##  the egg file is out of sync and will need to be manually deleted - see error message
##  for details of the corrupted zip file. )
##
## To push a version through to pip.
##  - Make sure it installs correctly locally as above
##  - Update the version information in this file
##  - python setup.py sdist upload -r pypitest  # for the test version
##  - python setup.py sdist upload -r pypi      # for the real version


import io
from os import path

from setuptools import setup

PYPI_VERSION = "0.3.0"

this_directory = path.abspath(path.dirname(__file__))
with io.open(path.join(this_directory, "README.md"), encoding="utf-8") as f:
    long_description = f.read()


if __name__ == "__main__":
    setup(
        name="pyselfdual",
        long_description=long_description,
        long_description_content_type="text/markdown",
        author="The PySelfDual developers",
        version=PYPI_VERSION,
        description="Depth-first search for binary self-dual codes of given length and minimum distance",
        install_requires=["numpy>=1.22", "absl-py>=1.0", "networkx>=2.6"],
        python_requires=">=3.10",
        tests_require=["pytest"],
        packages=["pyselfdual"],
        package_data={
            "pyselfdual": [
                "Examples/configs/*.json",
                "Examples/codes/*.txt",
                "Examples/matrices/*.txt",
            ]
        },
        entry_points={"console_scripts": ["pyselfdual = pyselfdual.cli:run"]},
        classifiers=[
            "Programming Language :: Python :: 3",
            "Programming Language :: Python :: 3.10",
            "Programming Language :: Python :: 3.11",
            "Programming Language :: Python :: 3.12",
            "Topic :: Scientific/Engineering :: Mathematics",
        ],
    )
