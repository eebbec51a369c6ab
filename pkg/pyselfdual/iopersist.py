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
This module reads and writes everything that leaves the process:

- search configurations (JSON)
- the plain-text code file format
- log events
- checksums of cached files

A configuration file has three sections; only the target is required and its
keys may also be given at the top level:

```json
{
  "target":   {"n": 12, "k": 6, "d": 4, "type": "I"},
  "strategy": {"conditions": {"mu_condition": false}, "order": "desc",
               "max_row_weight": null, "processes": 1, "debug": false,
               "limits": {"max_solutions": null, "max_nodes": null,
                          "time_budget": null}},
  "sink":     {"path": null, "silent": false}
}
```

A code file holds blocks separated by blank lines. Each block is a header
line followed by k rows of n characters from {0, 1}; `#` starts a comment.

```
# (8,4,4) extended Hamming code
n=8 k=4 d=4 type=II
10000111
01001011
00101101
00011110
```

It is good practise to store a checksum for each cached file. If you do not
know the checksum for a file, run

```python
md5sum(filename)
```

to return its unique identifier.
"""

# -*- coding: utf-8 -*-
import hashlib
import io
import json
import os

from absl import logging

from .codemodel import (
    CodeType,
    LinearCode,
    ParameterError,
    classify_type,
    distance_bound,
)
from .gf2core import BitMatrix

TARGET_KEYS = ("n", "k", "d", "type")
STRATEGY_KEYS = ("conditions", "order", "max_row_weight", "processes", "debug", "limits")
LIMIT_KEYS = ("max_solutions", "max_nodes", "time_budget")
SINK_KEYS = ("path", "silent")


class ConfigError(ValueError):
    """
    Invalid configuration. `key` is the dotted path of the offending entry,
    e.g. "target.k".
    """

    def __init__(self, key, message):
        super(ConfigError, self).__init__("{}: {}".format(key, message))
        self.key = key


class CodeFileError(ValueError):
    """ Malformed code file; `line` and `column` are 1-based """

    def __init__(self, message, line, column=1, path=None):
        where = "{}:{}:{}".format(path or "<code file>", line, column)
        super(CodeFileError, self).__init__("{}: {}".format(where, message))
        self.line = line
        self.column = column
        self.path = path


## ===================
## configuration


def _reject_unknown(section, allowed, path):
    for key in section:
        if key not in allowed:
            name = "{}.{}".format(path, key) if path else key
            raise ConfigError(name, "unknown key")


def _section(data, name):
    section = data.get(name, {})
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ConfigError(name, "expected an object, got {!r}".format(section))
    return section


def config_from_dict(data):
    """
    Build a `SearchConfig` from parsed JSON.

    Raises:
        ConfigError : unknown key or invalid value, `key` holds its path
    """
    from .searchengine import SearchConfig

    if not isinstance(data, dict):
        raise ConfigError("", "the configuration must be a JSON object")
    _reject_unknown(data, TARGET_KEYS + ("target", "strategy", "sink"), "")

    target = dict(_section(data, "target"))
    _reject_unknown(target, TARGET_KEYS, "target")
    prefix = {}
    for key in TARGET_KEYS:
        if key in data:
            if key in target:
                raise ConfigError(key, "given both at the top level and in target")
            target[key] = data[key]
            prefix[key] = key
    for key in ("n", "k", "d"):
        if key not in target:
            raise ConfigError(prefix.get(key, "target." + key), "missing")

    strategy = _section(data, "strategy")
    _reject_unknown(strategy, STRATEGY_KEYS, "strategy")
    limits = _section(strategy, "limits")
    _reject_unknown(limits, LIMIT_KEYS, "strategy.limits")
    sink = _section(data, "sink")
    _reject_unknown(sink, SINK_KEYS, "sink")

    conditions = strategy.get("conditions")
    if conditions is not None and not isinstance(conditions, (list, dict)):
        raise ConfigError("strategy.conditions", "expected a list or an object")

    paths = {
        "n": "target.n",
        "k": "target.k",
        "d": "target.d",
        "type": "target.type",
        "conditions": "strategy.conditions",
        "order": "strategy.order",
        "max_row_weight": "strategy.max_row_weight",
        "processes": "strategy.processes",
        "max_solutions": "strategy.limits.max_solutions",
        "max_nodes": "strategy.limits.max_nodes",
        "time_budget": "strategy.limits.time_budget",
    }
    paths.update(prefix)
    try:
        return SearchConfig(
            target["n"],
            target["k"],
            target["d"],
            target.get("type", "I"),
            conditions=conditions,
            order=strategy.get("order", "desc"),
            max_row_weight=strategy.get("max_row_weight"),
            max_solutions=limits.get("max_solutions"),
            max_nodes=limits.get("max_nodes"),
            time_budget=limits.get("time_budget"),
            processes=strategy.get("processes", 1),
            save_path=sink.get("path"),
            silent=sink.get("silent", False),
            debug=strategy.get("debug", False),
        )
    except ParameterError as exc:
        message = str(exc).split(": ", 1)[-1]
        raise ConfigError(paths.get(exc.key, exc.key), message)


def config_to_dict(config):
    """ the sectioned JSON form of a `SearchConfig` """
    return {
        "target": {
            "n": config.n,
            "k": config.k,
            "d": config.d,
            "type": config.code_type.value,
        },
        "strategy": {
            "conditions": list(config.conditions),
            "order": config.order,
            "max_row_weight": config.max_row_weight,
            "processes": config.processes,
            "debug": config.debug,
            "limits": {
                "max_solutions": config.max_solutions,
                "max_nodes": config.max_nodes,
                "time_budget": config.time_budget,
            },
        },
        "sink": {"path": config.save_path, "silent": config.silent},
    }


def load_config(path):
    """
    Load and validate a JSON configuration file.

    Args:
        path : str
            UTF-8 JSON file

    Returns:
        config : SearchConfig
    """
    with io.open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError("", "{} is not valid JSON: {}".format(path, exc))
    return config_from_dict(data)


def save_config(config, path):
    with io.open(path, "w", encoding="utf-8") as f:
        json.dump(config_to_dict(config), f, indent=2)
        f.write("\n")


## ===================
## code files


def format_code(code, d=None, comments=()):
    """
    One code file block.

    Args:
        code : LinearCode
        d : int (optional)
            minimum distance for the header, computed if not given
        comments : list of str
            lines written before the header, prefixed with '#'
    """
    if d is None:
        d = code.minimum_distance if code.k else 0
    code_type = classify_type(code)
    lines = ["# {}".format(comment) for comment in comments]
    lines.append("n={} k={} d={} type={}".format(code.n, code.k, d, code_type.value))
    lines.extend(code.generator.to_strings())
    return "\n".join(lines) + "\n"


def save_code(code, sink, d=None, comments=()):
    """
    Append one block to `sink`, a path or an open text file.
    """
    text = format_code(code, d, comments)
    if hasattr(sink, "write"):
        if sink.tell() > 0:
            sink.write("\n")
        sink.write(text)
        return
    exists = os.path.isfile(sink) and os.path.getsize(sink) > 0
    with io.open(sink, "a", encoding="utf-8") as f:
        if exists:
            f.write("\n")
        f.write(text)


def _parse_header(text, number, path):
    fields = {}
    column = 1
    for token in text.split():
        if "=" not in token:
            raise CodeFileError("expected key=value, got '{}'".format(token), number, column, path)
        key, value = token.split("=", 1)
        if key not in ("n", "k", "d", "type"):
            raise CodeFileError("unknown header key '{}'".format(key), number, column, path)
        fields[key] = value
        column += len(token) + 1
    for key in ("n", "k", "d", "type"):
        if key not in fields:
            raise CodeFileError("header is missing '{}'".format(key), number, 1, path)
    try:
        n, k, d = int(fields["n"]), int(fields["k"]), int(fields["d"])
        code_type = CodeType.parse(fields["type"])
    except ValueError as exc:
        raise CodeFileError("bad header value: {}".format(exc), number, 1, path)
    return n, k, d, code_type


def parse_codes(text, path=None, with_headers=False):
    """
    Parse the blocks of a code file.

    Returns:
        codes : list of LinearCode
            or a list of (LinearCode, (n, k, d, type)) with `with_headers`
    """
    blocks = []
    current = None
    lines = text.splitlines()
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            if current is not None and raw.strip() == "":
                blocks.append(current)
                current = None
            continue
        if current is None:
            current = {"header": _parse_header(line, number, path), "line": number, "rows": []}
            continue
        n = current["header"][0]
        row = line.strip()
        offset = len(line) - len(line.lstrip())
        for position, char in enumerate(row):
            if char not in "01":
                raise CodeFileError(
                    "unexpected character '{}'".format(char), number, offset + position + 1, path
                )
        if len(row) != n:
            raise CodeFileError(
                "row has {} characters, expected n = {}".format(len(row), n),
                number,
                offset + min(len(row), n) + 1,
                path,
            )
        current["rows"].append((number, row))
    if current is not None:
        blocks.append(current)

    codes = []
    for block in blocks:
        n, k, d, code_type = block["header"]
        rows = block["rows"]
        if len(rows) != k:
            raise CodeFileError(
                "expected k = {} rows, found {}".format(k, len(rows)), block["line"], 1, path
            )
        if code_type.self_dual and (n % 2 or d > distance_bound(n)):
            raise CodeFileError(
                "d = {} exceeds the bound for self-dual codes of length {}".format(d, n),
                block["line"],
                1,
                path,
            )
        try:
            code = LinearCode(BitMatrix.from_strings([row for _, row in rows]) if rows else BitMatrix([], n))
        except ValueError as exc:
            raise CodeFileError(str(exc), block["line"], 1, path)
        codes.append((code, (n, k, d, code_type)) if with_headers else code)
    return codes


def load_codes(path, with_headers=False):
    """ all codes of a code file, in file order """
    with io.open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_codes(text, path=str(path), with_headers=with_headers)


def load_matrix(path):
    """
    A bare matrix: one row of 0/1 characters per line, '#' comments.
    """
    rows = []
    with io.open(path, "r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for position, char in enumerate(line):
                if char not in "01":
                    raise CodeFileError(
                        "unexpected character '{}'".format(char), number, position + 1, str(path)
                    )
            if rows and len(line) != len(rows[0]):
                raise CodeFileError(
                    "row has {} characters, expected {}".format(len(line), len(rows[0])),
                    number,
                    1,
                    str(path),
                )
            rows.append(line)
    if not rows:
        return BitMatrix([], 0)
    return BitMatrix.from_strings(rows)


class CodeSaver(object):
    """
    Appends codes to one code file. A search owns a single saver.

    Args:
        path : str
            code file; parent directories are created
    """

    def __init__(self, path):
        self.path = path
        self.count = 0
        directory = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(directory):
            os.makedirs(directory)
        self._file = io.open(path, "a", encoding="utf-8")
        self._empty = os.path.getsize(path) == 0

    def save(self, code, d=None, comments=()):
        if not self._empty:
            self._file.write("\n")
        self._file.write(format_code(code, d, comments))
        self._file.flush()
        self._empty = False
        self.count += 1

    def close(self):
        if not self._file.closed:
            self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()


## ===================
## logging

LEVELS = {
    "search_started": logging.INFO,
    "code_found": logging.INFO,
    "search_done": logging.INFO,
    "node_expanded": logging.DEBUG,
    "pruned": logging.DEBUG,
    "error": logging.ERROR,
}


def format_event(event, **fields):
    """ "<event> key=value ..." with fields in the given order """
    parts = [event]
    for key, value in fields.items():
        if isinstance(value, dict):
            value = ",".join("{}:{}".format(k, v) for k, v in value.items()) or "-"
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        parts.append("{}={}".format(key, value))
    return " ".join(parts)


class EventLogger(object):
    """
    Structured search events through `absl.logging`, one event per line.

    Args:
        silent : bool
            drop every event below ERROR
    """

    def __init__(self, silent=False):
        self.silent = silent

    def level(self, event):
        return LEVELS.get(event, logging.INFO)

    def debug_enabled(self):
        return not self.silent and logging.level_debug()

    def log(self, event, **fields):
        level = self.level(event)
        if self.silent and level < logging.ERROR:
            return
        logging.log(level, format_event(event, **fields))

    def error(self, message, **fields):
        self.log("error", message=message, **fields)


## ===================
## checksums


def md5sum(filename, blocksize=65536):
    """
    Compute the MD5 checksum of a file.

    Args:
        filename : str
            path of the file
        blocksize : int
            bytes read at a time

    Returns:
        hash : str
            hexadecimal digest
    """
    hash = hashlib.md5()
    with open(filename, "rb") as f:
        for block in iter(lambda: f.read(blocksize), b""):
            hash.update(block)
    return hash.hexdigest()


def write_manifest(path, files):
    """ JSON manifest mapping file names (relative to `path`'s directory) to md5 """
    directory = os.path.dirname(os.path.abspath(path))
    manifest = {
        os.path.relpath(f, directory): md5sum(f) for f in files
    }
    with io.open(path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return manifest


def verify_manifest(path):
    """ True iff every file listed in the manifest exists with its checksum """
    if not os.path.isfile(path):
        return False
    directory = os.path.dirname(os.path.abspath(path))
    with io.open(path, "r", encoding="utf-8") as f:
        try:
            manifest = json.load(f)
        except json.JSONDecodeError:
            return False
    for name, checksum in manifest.items():
        filename = os.path.join(directory, name)
        if not os.path.isfile(filename) or md5sum(filename) != checksum:
            logging.warning("cached file %s does not match its checksum", filename)
            return False
    return True
