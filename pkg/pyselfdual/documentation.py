# Copyright 2024 The PySelfDual developers
#
# This file is part of PySelfDual.
#
# PySelfDual is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or any later version.
#
# PySelfDual is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with PySelfDual.  If not, see <http://www.gnu.org/licenses/>.

"""
Use the `pyselfdual.documentation.install_documentation` function to copy the
example configurations, matrices and code files to a local directory.

"""

import shutil

import pkg_resources as _pkg_resources


def install_documentation(path="./PySelfDual-Examples"):
    """
    Install the examples for PySelfDual in the given location.

    WARNING: If the path exists, the files will be written into the path
    and will overwrite any existing files with which they collide. The default
    path ("./PySelfDual-Examples") is chosen to make collision less likely/problematic

    The examples are:

       - `configs/*.json`: search configurations, e.g. the (12,6,4) and
         (56,28,12) Type I searches and a (30,15,6) search with light rows
       - `matrices/*.txt`: matrices for `pyselfdual tree`
       - `codes/*.txt`: code files for `pyselfdual check` and `pyselfdual neighbors`

    Returns:
        path : str
            the directory the examples were copied to
    """

    examples_path = _pkg_resources.resource_filename("pyselfdual", "Examples")
    shutil.copytree(examples_path, path, dirs_exist_ok=True)
    return path
