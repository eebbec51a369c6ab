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

> PySelfDual is a Python package for finding binary self-dual codes with a
> given length, dimension and minimum distance.

A self-dual (n, n/2, d) code has a generator matrix in standard form
\\( G = (I_k | A) \\). The search builds A row by row, depth first, and prunes
partial matrices with a set of conditions:

- admissible row weights and the overlap table of two rows (`pyselfdual.mutable`)
- one representative per column symmetry of the partial matrix, read off the
  partition tree of its columns (`pyselfdual.gammatree`)
- the weights of all sums of rows chosen so far
- the parity and distance of the finished code, and optionally a filter on
  the singly-even words forced into the code by its doubly-even neighbors
  (`pyselfdual.neighbors`)

Found codes can be reduced to one code per permutation-equivalence class
(`pyselfdual.equivalence`). Ground truth for short lengths is recomputed
independently by `pyselfdual.oracle`.

## Licence

Copyright 2024 The PySelfDual developers

PySelfDual is free software: you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation, either version 3 of the License, or any later version.

PySelfDual is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.

You should have received a copy of the GNU Lesser General Public License
along with PySelfDual.  If not, see <http://www.gnu.org/licenses/>.

## Installation

### Dependencies

You will need **Python 3.10+**.
Also, the following packages are required:

- [`numpy`](http://numpy.org)
- [`absl-py`](https://github.com/abseil/abseil-py)
- [`networkx`](https://networkx.org)

### Installing using pip

>>> python3 -m pip install pyselfdual

All the dependencies will be automatically installed by `pip`.

## Usage

```python
import pyselfdual

for code in pyselfdual.get_code(12, 6, 4, "I"):
    print(code.generator)
```

or from the shell

```
pyselfdual search --n 12 --k 6 --d 4 --type I --dedupe
pyselfdual mutable --n 56 --k 28 --d 12 --type I
```

A search is configured with keyword arguments or a JSON file, see
`pyselfdual.iopersist`. Its conditions are listed in
`pyselfdual.searchengine`.

## Examples

Example configurations, matrices and code files may be installed to a local
directory with

```python
import pyselfdual
pyselfdual.install_documentation(path="Examples")
```

## Contributing to pyselfdual

Bugs and suggestions are best raised on the issue tracker; changes are
welcome as pull requests. We use [`pytest`](https://pypi.org/project/pytest/)
for the unit tests. In the source directory this means running:

>>> python -m pytest tests

Long completeness runs are marked `slow` and run with `--runslow`.
Any new functionality should also have tests that we can use to verify the code.
"""

# -*- coding: utf-8 -*-
from .documentation import install_documentation
from .gf2core import BitMatrix, BitVector, rref, standard_form, weight, mu, inner_product
from .codemodel import (
    CodeType,
    LinearCode,
    ParameterError,
    classify_type,
    distance_bound,
    is_self_dual,
    max_doubly_even_subcode,
    min_distance,
    weight_enumerator,
)
from .mutable import MuTable, allowed_row_weights, build_table, mu_set
from .gammatree import PartitionTree, block_sorted, build_tree, leaves, reconstruct
from .neighbors import (
    are_neighbors,
    check_neighbor_weight_window,
    neighbors_through_kernel,
    singly_even_dual_filter,
)
from .equivalence import CanonicalBudgetExceeded, are_equivalent, dedupe, signature
from .searchengine import CodeSearch, SearchConfig, SearchReport, get_code, run_search
from .iopersist import ConfigError, CodeFileError, load_codes, load_config, save_code
from . import oracle
