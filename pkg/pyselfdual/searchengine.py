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
This PySelfDual module contains the depth-first search that builds a
standard-form generator matrix \\( (I_k | A) \\) row by row:

- `pyselfdual.searchengine.starters` returns the depth-1 nodes, one per
  admissible weight of the first A-row, its ones left-justified
- `pyselfdual.searchengine.children` extends a node by one row, keeping only
  rows that pass every per-row condition
- `pyselfdual.searchengine.descendants` recurses to depth k and applies the
  final conditions
- `pyselfdual.searchengine.CodeSearch` strings these together with limits,
  logging, saving and optional parallel workers
- `pyselfdual.searchengine.get_code` is the entry point

Every self-dual code of the requested parameters is equivalent to at least
one code the search yields. Two symmetry rules make that work with far fewer
nodes: A-rows are taken with non-increasing weight, and each new row has its
ones at the lowest positions of every block of columns the previous rows
cannot tell apart.

Conditions are referred to by name in configuration files:

| name | stage | check |
|------|-------|-------|
| `weight_monotone_condition` | row | A-row weights are non-increasing |
| `type_condition` | row | full-row weight is even (I) or divisible by 4 (II) |
| `gamma_order_condition` | row | the row is block sorted against the column partition |
| `mu_condition` | row | overlaps with earlier rows are in the mu-table |
| `span_window_condition` | row | every new combination of rows has weight in [d, n-d] or n |
| `parity_condition` | final | number of singly-even rows |
| `distance_condition` | final | exact minimum distance >= d |
| `dual_filter_condition` | final | singly-even words forced into the code, weaker than the distance check (off by default) |
"""

# -*- coding: utf-8 -*-
import time
import warnings
from collections import Counter, namedtuple
from itertools import combinations
from math import comb
from multiprocessing import Process, Queue, cpu_count
from queue import Empty

import numpy as np

from .codemodel import (
    CodeType,
    LinearCode,
    ParameterError,
    check_row_parity,
    classify_type,
    full_rows,
    is_self_dual,
    validate_parameters,
)
from .gammatree import block_sorted, block_sorted_rows, build_tree, refine
from .gf2core import BitMatrix, BitVector, as_word, popcount_array, span_words
from .iopersist import CodeSaver, EventLogger
from .mutable import MuTable, allowed_row_weights, mu_set
from .neighbors import singly_even_dual_filter

# the span cache covers at most this many rows, later rows are walked
MAX_SPAN_DEPTH = 22

# longer unbounded searches are warned about
DESK_SCALE_LENGTH = 64

# seconds between checks on the worker processes
WORKER_POLL_SECONDS = 1.0

Candidate = namedtuple("Candidate", ["row", "weight"])


class Condition(object):
    """
    A named pruning rule.

    Row conditions are asked about a candidate A-row for a node; a row
    condition that only looks at the weight implements `check_weight` so a
    whole weight class can be skipped at once. Final conditions are asked
    about the complete code.
    """

    name = None
    stage = "row"
    weight_level = False
    generative = False
    self_dual_only = False

    def check_weight(self, node, weight):
        return True

    def check(self, node, candidate):
        return True

    def __repr__(self):
        return "{}()".format(type(self).__name__)


class WeightMonotoneCondition(Condition):
    name = "weight_monotone_condition"
    weight_level = True

    def check_weight(self, node, weight):
        return not node.weights or weight <= node.weights[-1]

    def check(self, node, candidate):
        return self.check_weight(node, candidate.weight)


class TypeCondition(Condition):
    name = "type_condition"
    weight_level = True
    self_dual_only = True

    def check_weight(self, node, weight):
        if node.code_type is CodeType.TYPE_II:
            return (1 + weight) % 4 == 0
        return (1 + weight) % 2 == 0

    def check(self, node, candidate):
        return self.check_weight(node, candidate.weight)


class GammaOrderCondition(Condition):
    """ Rows are generated block sorted, so `children` never asks this one """

    name = "gamma_order_condition"
    generative = True

    def check(self, node, candidate):
        vector = BitVector(candidate.row, node.context.width)
        return block_sorted(node.partition, vector)


class MuCondition(Condition):
    name = "mu_condition"
    self_dual_only = True

    def check(self, node, candidate):
        table = node.context.mu_table
        for row, weight in zip(node.rows, node.weights):
            cell = table.cells.get((candidate.weight, weight), ())
            if (candidate.row & row).bit_count() not in cell:
                return False
        return True


class SpanWindowCondition(Condition):
    """
    Every combination of rows that uses the candidate has weight in
    [d, n - d] or equal to n (self-dual), or at least d (linear).
    """

    name = "span_window_condition"

    def check(self, node, candidate):
        context = node.context
        for weights in node.span_weights(node.full_row(candidate.row)):
            if context.self_dual:
                ok = ((weights >= context.d) & (weights <= context.n - context.d)) | (
                    weights == context.n
                )
            else:
                ok = weights >= context.d
            if not ok.all():
                return False
        return True


class ParityCondition(Condition):
    name = "parity_condition"
    stage = "final"
    self_dual_only = True

    def check(self, node, code):
        return check_row_parity(node.generator(), node.context.n, node.code_type)


class DistanceCondition(Condition):
    name = "distance_condition"
    stage = "final"

    def check(self, node, code):
        return code.minimum_distance >= node.context.d


class DualFilterCondition(Condition):
    name = "dual_filter_condition"
    stage = "final"
    self_dual_only = True

    def check(self, node, code):
        if node.code_type is not CodeType.TYPE_I:
            return True
        return singly_even_dual_filter(code, node.context.d)


CONDITIONS = {
    cls.name: cls
    for cls in (
        WeightMonotoneCondition,
        TypeCondition,
        GammaOrderCondition,
        MuCondition,
        SpanWindowCondition,
        ParityCondition,
        DistanceCondition,
        DualFilterCondition,
    )
}

SELF_DUAL_CONDITIONS = (
    "weight_monotone_condition",
    "type_condition",
    "gamma_order_condition",
    "mu_condition",
    "span_window_condition",
    "parity_condition",
    "distance_condition",
)

LINEAR_CONDITIONS = (
    "weight_monotone_condition",
    "span_window_condition",
    "distance_condition",
)


def default_conditions(code_type):
    """ names of the conditions switched on by default """
    if CodeType.parse(code_type).self_dual:
        return list(SELF_DUAL_CONDITIONS)
    return list(LINEAR_CONDITIONS)


def make_conditions(names):
    """ instantiate conditions by name, keeping the order """
    return [CONDITIONS[name]() for name in names]


class SearchConfig(object):
    """
    Everything that defines a search.

    Args:
        n, k, d : int
            target length, dimension and minimum distance (at least d)
        code_type : str or CodeType
            "I", "II" or "linear"
        conditions : list or dict (optional)
            a list gives the conditions in order, a dict maps names to
            True/False to switch defaults on or off
        order : str
            "desc" (default) or "asc": order in which row weights are tried
        max_row_weight : int (optional)
            only use generator rows of weight 1 + w <= max_row_weight
        max_solutions, max_nodes : int (optional)
            stop after this many codes / expanded nodes
        time_budget : float (optional)
            stop after this many seconds
        processes : int
            number of worker processes, 1 searches in this process
        save_path : str (optional)
            append every code found to this file
        silent : bool
            only log errors
        debug : bool
            recompute the cached quantities of every node

    Notes:
        Parameters are validated on construction; `ParameterError.key`
        names the offending field.
    """

    def __init__(
        self,
        n,
        k,
        d,
        code_type="I",
        conditions=None,
        order="desc",
        max_row_weight=None,
        max_solutions=None,
        max_nodes=None,
        time_budget=None,
        processes=1,
        save_path=None,
        silent=False,
        debug=False,
    ):
        self.code_type = validate_parameters(n, k, d, code_type)
        self.n = int(n)
        self.k = int(k)
        self.d = int(d)
        self.conditions = self._resolve_conditions(conditions)
        self.order = order
        self.max_row_weight = max_row_weight
        self.max_solutions = max_solutions
        self.max_nodes = max_nodes
        self.time_budget = time_budget
        self.processes = processes
        self.save_path = save_path
        self.silent = bool(silent)
        self.debug = bool(debug)
        self.validate()

    def _resolve_conditions(self, conditions):
        if conditions is None:
            return default_conditions(self.code_type)
        if isinstance(conditions, dict):
            names = default_conditions(self.code_type)
            for name, enabled in conditions.items():
                self._check_name(name)
                if enabled and name not in names:
                    names.append(name)
                elif not enabled and name in names:
                    names.remove(name)
            return names
        names = list(conditions)
        for name in names:
            self._check_name(name)
        if len(set(names)) != len(names):
            raise ParameterError("conditions", "duplicate condition in {}".format(names))
        return names

    def _check_name(self, name):
        if name not in CONDITIONS:
            raise ParameterError(
                "conditions",
                "unknown condition '{}', expected one of {}".format(name, sorted(CONDITIONS)),
            )
        if CONDITIONS[name].self_dual_only and not self.code_type.self_dual:
            raise ParameterError(
                "conditions", "'{}' only applies to self-dual codes".format(name)
            )

    def validate(self):
        if self.order not in ("asc", "desc"):
            raise ParameterError("order", "expected 'asc' or 'desc', got {!r}".format(self.order))
        for key in ("max_row_weight", "max_solutions", "max_nodes", "processes"):
            value = getattr(self, key)
            if value is None and key != "processes":
                continue
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
                raise ParameterError(key, "expected a positive integer, got {!r}".format(value))
        if self.time_budget is not None:
            if isinstance(self.time_budget, bool) or not self.time_budget > 0:
                raise ParameterError(
                    "time_budget", "expected a positive number, got {!r}".format(self.time_budget)
                )

    def replace(self, **changes):
        """ a copy of this config with some fields changed """
        fields = self.as_kwargs()
        fields.update(changes)
        return SearchConfig(**fields)

    def as_kwargs(self):
        return dict(
            n=self.n,
            k=self.k,
            d=self.d,
            code_type=self.code_type.value,
            conditions=list(self.conditions),
            order=self.order,
            max_row_weight=self.max_row_weight,
            max_solutions=self.max_solutions,
            max_nodes=self.max_nodes,
            time_budget=self.time_budget,
            processes=self.processes,
            save_path=self.save_path,
            silent=self.silent,
            debug=self.debug,
        )

    def __eq__(self, other):
        if not isinstance(other, SearchConfig):
            return NotImplemented
        return self.as_kwargs() == other.as_kwargs()

    def __repr__(self):
        return "SearchConfig(n={}, k={}, d={}, type={})".format(
            self.n, self.k, self.d, self.code_type.value
        )


class SearchContext(object):
    """
    Constants of a search shared by all of its nodes: the weights rows are
    drawn from, the mu-table and the limits on caching.
    """

    def __init__(self, config):
        self.n = config.n
        self.k = config.k
        self.d = config.d
        self.code_type = config.code_type
        self.self_dual = config.code_type.self_dual
        self.width = config.n - config.k
        self.debug = config.debug
        self.names = tuple(config.conditions)

        parity = "type_condition" in config.conditions
        weights = allowed_row_weights(
            config.n,
            config.k,
            config.d,
            config.code_type,
            config.max_row_weight,
            parity=parity,
        )
        if config.order == "asc":
            weights = weights[::-1]
        self.row_weights = weights

        self.mu_table = None
        if self.self_dual:
            cells = {}
            for w1 in weights:
                for w2 in weights:
                    cells[(w1, w2)] = tuple(mu_set(w1, w2, self.n, self.k, self.d))
            self.mu_table = MuTable(
                self.n, self.k, self.d, self.code_type, sorted(weights, reverse=True), cells
            )


class SearchNode(object):
    """
    A partial matrix of `depth` A-rows with its caches.

    Attributes:
        rows : tuple of int
            A-rows, `context.width` bits each; the identity block is implicit
        weights : tuple of int
            weights of the A-rows
        mu : tuple of tuples
            `mu[i][j]` is the overlap of rows i and j for j < i
        partition : tuple of tuples
            blocks of A-columns that the rows so far do not distinguish
        span : 1D numpy array
            all combinations of the first `span_depth` full rows
    """

    def __init__(self, context, rows=(), weights=(), mu=(), partition=None, span=None):
        self.context = context
        self.rows = tuple(rows)
        self.weights = tuple(weights)
        self.mu = tuple(mu)
        if partition is None:
            partition = (tuple(range(context.width)),) if context.width else ()
        self.partition = partition
        if span is None:
            span = span_words(
                full_rows(self.rows[:MAX_SPAN_DEPTH], context.n), context.n
            )
        self.span = span

    @property
    def n(self):
        return self.context.n

    @property
    def k_target(self):
        return self.context.k

    @property
    def d(self):
        return self.context.d

    @property
    def code_type(self):
        return self.context.code_type

    @property
    def depth(self):
        return len(self.rows)

    def full_row(self, row, index=None):
        if index is None:
            index = self.depth
        return (1 << (self.context.n - 1 - index)) | row

    @property
    def span_depth(self):
        return len(self.span).bit_length() - 1

    def span_weights(self, word):
        """
        Weights of `word` plus every combination of the rows, in chunks.
        Rows past the cached span are walked in Gray-code order.
        """
        n = self.context.n
        low = self.span ^ as_word(word, n)
        yield popcount_array(low)
        high = [
            self.full_row(row, index)
            for index, row in enumerate(self.rows)
            if index >= self.span_depth
        ]
        current = 0
        for step in range(1, 1 << len(high)):
            flip = (step & -step).bit_length() - 1
            current ^= high[flip]
            yield popcount_array(low ^ as_word(current, n))

    def extend(self, row, weight):
        """ a new node with one more row, caches updated incrementally """
        context = self.context
        mu = self.mu + (tuple((row & r).bit_count() for r in self.rows),)
        partition = refine(self.partition, row, context.width)
        span = self.span
        if self.depth < MAX_SPAN_DEPTH:
            word = as_word(self.full_row(row), context.n)
            span = np.concatenate([self.span, self.span ^ word])
        return SearchNode(
            context, self.rows + (row,), self.weights + (weight,), mu, partition, span
        )

    def matrix(self):
        """ the A-block """
        return BitMatrix(self.rows, self.context.width)

    def generator(self):
        return BitMatrix(full_rows(self.rows, self.context.n), self.context.n)

    def to_code(self):
        return LinearCode(self.generator())

    def tree(self):
        """ the partition tree of the A-block """
        return build_tree(self.matrix(), require_sorted=False)

    def verify(self):
        """
        Recompute every cache from scratch.

        Raises:
            RuntimeError : a cache disagrees with the rows
        """
        context = self.context
        if self.weights != tuple(r.bit_count() for r in self.rows):
            raise RuntimeError("weight cache drift at depth {}".format(self.depth))
        for i, row in enumerate(self.rows):
            expected = tuple((row & r).bit_count() for r in self.rows[:i])
            if self.mu[i] != expected:
                raise RuntimeError("mu cache drift at row {}".format(i))
        if context.mu_table is not None and "mu_condition" in context.names:
            for i in range(self.depth):
                for j in range(i):
                    if not context.mu_table.admits(self.weights[i], self.weights[j], self.mu[i][j]):
                        raise RuntimeError("inadmissible mu between rows {} and {}".format(j, i))
        if context.self_dual:
            full = full_rows(self.rows, context.n)
            for i, gi in enumerate(full):
                for gj in full[i:]:
                    if (gi & gj).bit_count() % 2:
                        raise RuntimeError("rows are not orthogonal at depth {}".format(self.depth))
        partition = (tuple(range(context.width)),) if context.width else ()
        for row in self.rows:
            partition = refine(partition, row, context.width)
        if partition != self.partition:
            raise RuntimeError("partition cache drift at depth {}".format(self.depth))
        expected = span_words(full_rows(self.rows[: self.span_depth], context.n), context.n)
        if not np.array_equal(expected, self.span):
            raise RuntimeError("span cache drift at depth {}".format(self.depth))

    def __repr__(self):
        return "SearchNode(depth={}, weights={})".format(self.depth, self.weights)


class SearchReport(object):
    """
    Counters of a search.

    Attributes:
        starters : int
            depth-1 nodes produced
        children_accepted : int
            nodes produced by `children`
        pruned : Counter
            rejected candidates per condition name, plus "orthogonality"
            and "code_type" for the structural checks of self-dual targets
        yields : int
            codes yielded
        wall_time : float
            seconds
        limit_reached : str or None
            "max_solutions", "max_nodes" or "time_budget"
    """

    def __init__(self):
        self.starters = 0
        self.children_accepted = 0
        self.pruned = Counter()
        self.yields = 0
        self.wall_time = 0.0
        self.limit_reached = None

    @property
    def nodes_expanded(self):
        return self.starters + self.children_accepted

    def prune(self, name, count=1):
        if count:
            self.pruned[name] += count

    def merge(self, other):
        """ add the counters of a worker's report """
        self.starters += other.starters
        self.children_accepted += other.children_accepted
        self.pruned.update(other.pruned)
        if other.limit_reached and not self.limit_reached:
            self.limit_reached = other.limit_reached

    def as_dict(self):
        return dict(
            nodes_expanded=self.nodes_expanded,
            starters=self.starters,
            children_accepted=self.children_accepted,
            yields=self.yields,
            wall_time=round(self.wall_time, 3),
            limit_reached=self.limit_reached,
            pruned=dict(sorted(self.pruned.items())),
        )

    def __str__(self):
        return " ".join("{}={}".format(key, value) for key, value in self.as_dict().items())


class SearchLimitReached(Exception):
    def __init__(self, reason):
        super(SearchLimitReached, self).__init__(reason)
        self.reason = reason


class SearchMonitor(object):
    """ Collects counters, enforces node and time limits, forwards log events """

    def __init__(self, report=None, logger=None, max_nodes=None, time_budget=None):
        self.report = report if report is not None else SearchReport()
        self.logger = logger
        self.max_nodes = max_nodes
        self.time_budget = time_budget
        self.start = time.time()

    def pruned(self, name, count=1):
        self.report.prune(name, count)
        if self.logger is not None and self.logger.debug_enabled():
            self.logger.log("pruned", condition=name, count=count)

    def expanded(self, node, starter=False):
        if starter:
            self.report.starters += 1
        else:
            self.report.children_accepted += 1
        if self.logger is not None and self.logger.debug_enabled():
            self.logger.log("node_expanded", depth=node.depth, weights=list(node.weights))
        if self.max_nodes is not None and self.report.nodes_expanded >= self.max_nodes:
            raise SearchLimitReached("max_nodes")
        if self.time_budget is not None and time.time() - self.start > self.time_budget:
            raise SearchLimitReached("time_budget")


def starters(config, monitor=None):
    """
    Depth-1 nodes: one per admissible first-row weight, ones left-justified.

    Args:
        config : SearchConfig

    Yields:
        node : SearchNode
    """
    context = SearchContext(config)
    root = SearchNode(context)
    width = context.width
    for weight in context.row_weights:
        if context.self_dual and (1 + weight) % 2:
            if monitor is not None:
                monitor.pruned("orthogonality")
            continue
        row = ((1 << weight) - 1) << (width - weight)
        node = root.extend(row, weight)
        if monitor is not None:
            monitor.expanded(node, starter=True)
        yield node


def _candidate_rows(node, weight, gamma):
    width = node.context.width
    if gamma:
        return block_sorted_rows(node.partition, weight, width)
    return (
        sum(1 << (width - 1 - j) for j in columns)
        for columns in combinations(range(width), weight)
    )


def children(node, conditions, monitor=None):
    """
    Extensions of `node` by one A-row that pass every row condition.

    Args:
        node : SearchNode
        conditions : list of Condition
            final conditions in the list are ignored here

    Yields:
        child : SearchNode
    """
    if monitor is None:
        monitor = SearchMonitor()
    context = node.context
    width = context.width
    row_conditions = [c for c in conditions if c.stage == "row"]
    weight_checks = [c for c in row_conditions if c.weight_level]
    row_checks = [c for c in row_conditions if not c.weight_level and not c.generative]
    gamma = any(c.generative for c in row_conditions)

    for weight in context.row_weights:
        if context.self_dual and (1 + weight) % 2:
            monitor.pruned("orthogonality", comb(width, weight))
            continue
        failed = next((c for c in weight_checks if not c.check_weight(node, weight)), None)
        if failed is not None:
            monitor.pruned(failed.name, comb(width, weight))
            continue

        produced = 0
        for row in _candidate_rows(node, weight, gamma):
            produced += 1
            if context.self_dual and any((row & r).bit_count() % 2 for r in node.rows):
                monitor.pruned("orthogonality")
                continue
            candidate = Candidate(row, weight)
            failed = next((c for c in row_checks if not c.check(node, candidate)), None)
            if failed is not None:
                monitor.pruned(failed.name)
                continue
            child = node.extend(row, weight)
            if context.debug:
                child.verify()
            monitor.expanded(child)
            yield child
        if gamma:
            monitor.pruned("gamma_order_condition", comb(width, weight) - produced)


def finalise(node, conditions, monitor=None):
    """
    Apply the structural checks and the final conditions to a complete node.

    Returns:
        code : LinearCode or None
    """
    if monitor is None:
        monitor = SearchMonitor()
    code = node.to_code()
    if node.context.self_dual:
        if not is_self_dual(code):
            monitor.pruned("orthogonality")
            return None
        if classify_type(code) is not node.code_type:
            monitor.pruned("code_type")
            return None
    for condition in conditions:
        if condition.stage != "final":
            continue
        if not condition.check(node, code):
            monitor.pruned(condition.name)
            return None
    return code


def descendants(node, conditions, monitor=None):
    """
    All codes below `node`, depth first.

    Yields:
        code : LinearCode
    """
    if monitor is None:
        monitor = SearchMonitor()
    if node.depth == node.k_target:
        code = finalise(node, conditions, monitor)
        if code is not None:
            yield code
        return
    for child in children(node, conditions, monitor):
        yield from descendants(child, conditions, monitor)


def _search_worker(config, tasks, results):
    """ Worker loop: search the subtree of every node received """
    conditions = make_conditions(config.conditions)
    for index, node in iter(tasks.get, None):
        report = SearchReport()
        monitor = SearchMonitor(report, None, config.max_nodes, config.time_budget)
        codes = []
        try:
            for code in descendants(node, conditions, monitor):
                codes.append(list(code.rows))
        except SearchLimitReached as exc:
            report.limit_reached = exc.reason
        except Exception as exc:
            results.put((index, exc, None))
            continue
        results.put((index, codes, report))


def _next_result(results, workers):
    """
    Wait for a worker result.

    Raises:
        RuntimeError : a worker exited without posting its result
    """
    while True:
        try:
            return results.get(timeout=WORKER_POLL_SECONDS)
        except Empty:
            for worker in workers:
                if worker.exitcode not in (None, 0):
                    raise RuntimeError(
                        "search worker {} exited with code {}".format(worker.pid, worker.exitcode)
                    )


class CodeSearch(object):
    """
    A configured search. Iterating it runs the search and yields codes;
    `report` holds the counters once iteration has finished.

    Args:
        config : SearchConfig
        logger : EventLogger (optional)

    Notes:
        With `config.processes > 1` every depth-2 node is searched by a pool
        of worker processes and the results are merged back in depth-first
        order, so the stream is the same as a sequential run. Node and time
        limits then apply per worker.
    """

    def __init__(self, config, logger=None):
        self.config = config
        self.conditions = make_conditions(config.conditions)
        self.logger = logger if logger is not None else EventLogger(silent=config.silent)
        self.report = SearchReport()
        if config.n > DESK_SCALE_LENGTH and not (
            config.max_solutions or config.max_nodes or config.time_budget
        ):
            warnings.warn(
                "unbounded search for n = {} may not finish, set a limit".format(config.n),
                RuntimeWarning,
            )

    def __iter__(self):
        return self.run()

    def _monitor(self):
        return SearchMonitor(
            self.report, self.logger, self.config.max_nodes, self.config.time_budget
        )

    def _sequential(self, monitor):
        for starter in starters(self.config, monitor):
            yield from descendants(starter, self.conditions, monitor)

    def _parallel(self, monitor):
        config = self.config
        branches = []
        for starter in starters(config, monitor):
            if starter.depth == config.k:
                branches.append(starter)
            else:
                branches.extend(children(starter, self.conditions, monitor))

        processes = min(config.processes, cpu_count(), max(len(branches), 1))
        tasks = Queue()
        results = Queue()
        workers = [
            Process(target=_search_worker, args=(config, tasks, results))
            for _ in range(processes)
        ]
        for worker in workers:
            worker.start()
        for item in enumerate(branches):
            tasks.put(item)
        for _ in workers:
            tasks.put(None)

        pending = {}
        upcoming = 0
        try:
            for _ in range(len(branches)):
                index, codes, report = _next_result(results, workers)
                if isinstance(codes, Exception):
                    raise codes
                pending[index] = (codes, report)
                while upcoming in pending:
                    codes, report = pending.pop(upcoming)
                    upcoming += 1
                    self.report.merge(report)
                    for rows in codes:
                        yield LinearCode(rows, config.n)
        finally:
            for worker in workers:
                if worker.is_alive():
                    worker.terminate()
                worker.join()

    def run(self):
        config = self.config
        self.report = SearchReport()
        monitor = self._monitor()
        start = time.time()
        self.logger.log(
            "search_started",
            n=config.n,
            k=config.k,
            d=config.d,
            type=config.code_type.value,
            conditions=",".join(config.conditions),
        )
        saver = CodeSaver(config.save_path) if config.save_path else None
        if config.processes > 1 and config.k > 1:
            source = self._parallel(monitor)
        else:
            source = self._sequential(monitor)
        try:
            for code in source:
                self.report.yields += 1
                self.logger.log(
                    "code_found", index=self.report.yields, d=code.minimum_distance
                )
                if saver is not None:
                    saver.save(code)
                yield code
                if config.max_solutions and self.report.yields >= config.max_solutions:
                    self.report.limit_reached = "max_solutions"
                    break
        except SearchLimitReached as exc:
            self.report.limit_reached = exc.reason
        finally:
            source.close()
            if saver is not None:
                saver.close()
            self.report.wall_time = time.time() - start
            self.logger.log("search_done", **self.report.as_dict())


def run_search(config, logger=None):
    """
    Search for codes with the parameters of `config`.

    Returns:
        search : CodeSearch
            iterate it for the codes, read `search.report` afterwards
    """
    return CodeSearch(config, logger)


def get_code(n, k, d, code_type="I", config=None, **kwargs):
    """
    Generator of (n, k, >= d) codes of the given type.

    Args:
        n, k, d : int
            target parameters
        code_type : str
            "I", "II" or "linear"
        config : str, dict or SearchConfig (optional)
            a configuration file, a parsed configuration or a config whose
            strategy is reused; its target is replaced by (n, k, d, type)
        **kwargs : optional
            any `SearchConfig` field, overriding `config`

    Usage:
        >>> for code in get_code(12, 6, 4, "I"):
        ...     print(code.generator)
    """
    from .iopersist import config_from_dict, load_config

    if config is None:
        fields = {}
    elif isinstance(config, SearchConfig):
        fields = config.as_kwargs()
    elif isinstance(config, dict):
        fields = config_from_dict(config).as_kwargs()
    else:
        fields = load_config(config).as_kwargs()
    if config is not None and CodeType.parse(code_type) is not CodeType.parse(
        fields.get("code_type", code_type)
    ):
        # conditions of another code type may not apply
        fields.pop("conditions", None)
    fields.update(n=n, k=k, d=d, code_type=code_type)
    fields.update(kwargs)
    search = CodeSearch(SearchConfig(**fields))
    for code in search:
        yield code
