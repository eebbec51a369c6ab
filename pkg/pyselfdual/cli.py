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
Command line interface.

```
pyselfdual search --n 12 --k 6 --d 4 --type I --dedupe
pyselfdual mutable --n 56 --k 28 --d 12 --type I
pyselfdual tree --matrix example.txt
pyselfdual neighbors --code code.txt --out-dir neighbors/
pyselfdual check --code code.txt
pyselfdual dedupe --dir results/
```

Results go to stdout, log events to stderr. Flags given on the command line
override the values of a `--config` file; the save directory defaults to
`$PYSELFDUAL_SAVE_DIR`.

Exit codes:
    0 : results produced
    1 : valid run without results
    2 : usage or validation error
    3 : input file or runtime error
"""

# -*- coding: utf-8 -*-
import glob
import io
import os
import sys

from absl import app
from absl.flags import argparse_flags

from .codemodel import CodeType, LinearCode, classify_type, is_self_dual
from .equivalence import dedupe
from .gammatree import build_tree, render_tree
from .iopersist import (
    CodeFileError,
    EventLogger,
    format_code,
    load_codes,
    load_config,
    load_matrix,
)
from .mutable import build_table
from .neighbors import all_neighbors, neighbors_doubly_even, neighbors_through_kernel
from .searchengine import SearchConfig, run_search

SAVE_DIR_VARIABLE = "PYSELFDUAL_SAVE_DIR"

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def parse_flags(argv):
    """ argparse parser with absl flag support; `argv[0]` is the program """
    parser = argparse_flags.ArgumentParser(
        prog="pyselfdual",
        description="Search and analyse self-dual binary codes.",
        allow_abbrev=False,
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    search = commands.add_parser("search", help="search for (n, k, d) codes")
    search.add_argument("--n", type=int)
    search.add_argument("--k", type=int)
    search.add_argument("--d", type=int)
    search.add_argument("--type", dest="code_type", choices=["I", "II", "linear"])
    search.add_argument("--config", help="JSON configuration file")
    search.add_argument("--limit", type=int, help="stop after this many codes")
    search.add_argument("--save", help="directory the codes are appended to")
    search.add_argument("--order", choices=["asc", "desc"])
    search.add_argument("--max-row-weight", type=int)
    search.add_argument("--max-nodes", type=int)
    search.add_argument("--time-budget", type=float)
    search.add_argument("--processes", type=int)
    search.add_argument("--silent", action="store_true", default=None)
    search.add_argument("--debug", action="store_true", default=None)
    search.add_argument("--dedupe", action="store_true", help="print one code per class")

    mutable = commands.add_parser("mutable", help="print the mu-table")
    mutable.add_argument("--n", type=int, required=True)
    mutable.add_argument("--k", type=int, required=True)
    mutable.add_argument("--d", type=int, required=True)
    mutable.add_argument("--type", dest="code_type", default="I", choices=["I", "II"])
    mutable.add_argument("--max-row-weight", type=int)

    tree = commands.add_parser("tree", help="print the column partition tree of a matrix")
    tree.add_argument("--matrix", required=True, help="file with the rows of A")
    tree.add_argument(
        "--standard-form", action="store_true", help="the file holds (I | A) instead of A"
    )

    neighbors = commands.add_parser("neighbors", help="neighbors of a type I code")
    neighbors.add_argument("--code", required=True)
    neighbors.add_argument("--out-dir", help="write neighbor1.txt and neighbor2.txt here")
    neighbors.add_argument("--choice", default="first", choices=["first", "last"])
    neighbors.add_argument(
        "--all", action="store_true", help="every self-dual neighbor of the code"
    )

    check = commands.add_parser("check", help="verify the headers of a code file")
    check.add_argument("--code", required=True)

    dedupe_cmd = commands.add_parser("dedupe", help="one code per class from a directory")
    dedupe_cmd.add_argument("--dir", required=True)
    dedupe_cmd.add_argument("--pattern", default="*.txt")
    dedupe_cmd.add_argument("--out", help="write the representatives to this file")

    oracle = commands.add_parser("oracle")
    oracle.add_argument("--n", type=int, required=True)
    oracle.add_argument("--d", type=int)
    oracle.add_argument("--type", dest="code_type", choices=["I", "II"])
    oracle.add_argument("--cache-dir")

    return parser.parse_args(argv[1:])


def _write(text, out=None):
    (out or sys.stdout).write(text)


def _summary(index, code, d):
    return "{} n={} k={} d={} type={} {}\n".format(
        index,
        code.n,
        code.k,
        d,
        classify_type(code).value,
        " ".join(code.generator.to_strings()),
    )


## ===================
## subcommands


def search_config(args):
    """ the effective configuration: config file first, flags on top """
    fields = load_config(args.config).as_kwargs() if args.config else {}
    overrides = {
        "n": args.n,
        "k": args.k,
        "d": args.d,
        "code_type": args.code_type,
        "order": args.order,
        "max_row_weight": args.max_row_weight,
        "max_solutions": args.limit,
        "max_nodes": args.max_nodes,
        "time_budget": args.time_budget,
        "processes": args.processes,
        "silent": args.silent,
        "debug": args.debug,
    }
    if (
        args.config
        and args.code_type is not None
        and CodeType.parse(args.code_type) is not CodeType.parse(fields["code_type"])
    ):
        fields.pop("conditions", None)
    for key, value in overrides.items():
        if value is not None:
            fields[key] = value
    for key in ("n", "k", "d"):
        if key not in fields:
            raise ValueError("--{} is required without a configuration file".format(key))

    save_dir = args.save or os.environ.get(SAVE_DIR_VARIABLE)
    if save_dir:
        fields["save_path"] = os.path.join(
            save_dir,
            "selfdual_n{}_k{}_d{}_{}.txt".format(
                fields["n"], fields["k"], fields["d"], CodeType.parse(fields.get("code_type", "I")).value
            ),
        )
    return SearchConfig(**fields)


def command_search(args):
    config = search_config(args)
    search = run_search(config, EventLogger(silent=config.silent))
    codes = []
    for code in search:
        codes.append(code)
        if not args.dedupe:
            _write(_summary(len(codes), code, code.minimum_distance))
    if args.dedupe and codes:
        classes = dedupe(codes)
        for index, code in enumerate(classes, start=1):
            _write(_summary(index, code, code.minimum_distance))
        _write("classes={}\n".format(len(classes)))
    _write("report: {}\n".format(search.report))
    return EXIT_OK if codes else EXIT_EMPTY


def command_mutable(args):
    table = build_table(args.n, args.k, args.d, args.code_type, args.max_row_weight)
    _write(table.render())
    return EXIT_OK if table.allowed_row_weights else EXIT_EMPTY


def command_tree(args):
    M = load_matrix(args.matrix)
    if args.standard_form:
        M = M.submatrix(M.row_count, M.col_count)
    _write(render_tree(build_tree(M, require_sorted=False)))
    return EXIT_OK


def _first_code(path):
    codes = load_codes(path)
    if not codes:
        raise CodeFileError("no code in file", 1, 1, path)
    return codes[0]


def command_neighbors(args):
    C = _first_code(args.code)
    if args.all:
        found = all_neighbors(C)
        text = "\n".join(format_code(N) for N in found)
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            with io.open(os.path.join(args.out_dir, "neighbors.txt"), "w", encoding="utf-8") as f:
                f.write(text)
        else:
            _write(text)
        _write("neighbors={}\n".format(len(found)))
        return EXIT_OK if found else EXIT_EMPTY

    pair = neighbors_through_kernel(C, args.choice)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, N in (("neighbor1.txt", pair.n1), ("neighbor2.txt", pair.n2)):
            with io.open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as f:
                f.write(format_code(N))
    else:
        _write(format_code(pair.n1, comments=["neighbor 1"]))
        _write("\n")
        _write(format_code(pair.n2, comments=["neighbor 2"]))
    parity = "doubly-even" if neighbors_doubly_even(pair) else "singly-even"
    _write("gamma1={} gamma2={} parity={}\n".format(pair.gamma1, pair.gamma2, parity))
    return EXIT_OK


def check_code(code, header):
    """ one verdict line for a code and its header (n, k, d, type) """
    n, k, d, code_type = header
    problems = []
    if (code.n, code.k) != (n, k):
        problems.append("shape is ({}, {})".format(code.n, code.k))
    actual_d = code.minimum_distance if code.k else 0
    if actual_d != d:
        problems.append("minimum distance is {}".format(actual_d))
    if code_type.self_dual:
        if not is_self_dual(code):
            problems.append("not self-dual")
        elif classify_type(code) is not code_type:
            problems.append("type is {}".format(classify_type(code).value))
        label = "self-dual, Type {}, d={}".format(code_type.value, d)
    else:
        label = "linear, d={}".format(d)
    if problems:
        return False, "{}: FAIL ({})".format(label, "; ".join(problems))
    return True, "{}: OK".format(label)


def command_check(args):
    results = load_codes(args.code, with_headers=True)
    passed = True
    for code, header in results:
        ok, line = check_code(code, header)
        passed = passed and ok
        _write(line + "\n")
    return EXIT_OK if results and passed else EXIT_EMPTY


def command_dedupe(args):
    if not os.path.isdir(args.dir):
        raise IOError("{} is not a directory".format(args.dir))
    files = sorted(glob.glob(os.path.join(args.dir, args.pattern)))
    groups = {}
    for path in files:
        for code in load_codes(path):
            groups.setdefault((code.n, code.k), []).append(code)
    representatives = []
    for shape in sorted(groups):
        representatives.extend(dedupe(groups[shape]))
    text = "\n".join(format_code(code) for code in representatives)
    if args.out:
        with io.open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        _write(text)
    _write("files={} classes={}\n".format(len(files), len(representatives)))
    return EXIT_OK if representatives else EXIT_EMPTY


def command_oracle(args):
    from .oracle import classify, load_or_build_corpus

    corpus = load_or_build_corpus(args.n, args.cache_dir)
    classes = classify(corpus, args.d, args.code_type)
    blocks = []
    for c in classes:
        code = LinearCode(c.generator)
        blocks.append(format_code(code, c.d, comments=["orbit size {}".format(c.orbit_size)]))
    _write("\n".join(blocks))
    _write("classes={} total={}\n".format(len(classes), corpus.total))
    return EXIT_OK if classes else EXIT_EMPTY


COMMANDS = {
    "search": command_search,
    "mutable": command_mutable,
    "tree": command_tree,
    "neighbors": command_neighbors,
    "check": command_check,
    "dedupe": command_dedupe,
    "oracle": command_oracle,
}


def main(args):
    """ run a parsed command and map failures onto exit codes """
    try:
        return COMMANDS[args.command](args)
    except CodeFileError as exc:
        EventLogger().error(str(exc))
        return EXIT_RUNTIME
    except OSError as exc:
        EventLogger().error(str(exc))
        return EXIT_RUNTIME
    except ValueError as exc:
        EventLogger().error(str(exc))
        return EXIT_USAGE
    except RuntimeError as exc:
        EventLogger().error(str(exc))
        return EXIT_RUNTIME


def run():
    app.run(main, flags_parser=parse_flags)


if __name__ == "__main__":
    run()
