import multiprocessing
import os

import pytest

from pyselfdual import searchengine
from pyselfdual.codemodel import (
    CodeType,
    ParameterError,
    classify_type,
    full_rows,
    min_distance,
)
from pyselfdual.equivalence import dedupe
from pyselfdual.gammatree import block_sorted
from pyselfdual.gf2core import BitVector, popcount_array, span_words
from pyselfdual.iopersist import EventLogger, load_codes
from pyselfdual.mutable import mu_set
from pyselfdual.oracle import (
    classify,
    enumerate_all_self_dual,
    neighbor_closure_classify,
    same_class,
)
from pyselfdual.searchengine import (
    CONDITIONS,
    SearchConfig,
    SearchMonitor,
    SearchNode,
    children,
    default_conditions,
    get_code,
    make_conditions,
    run_search,
    starters,
)

from conftest import examples_path, corpus8, corpus12

ROW_CONDITIONS = [
    "weight_monotone_condition",
    "type_condition",
    "gamma_order_condition",
    "mu_condition",
    "span_window_condition",
]


class RecordingLogger(EventLogger):
    def __init__(self):
        super(RecordingLogger, self).__init__()
        self.events = []

    def log(self, event, **fields):
        self.events.append((event, fields))


def search(n, k, d, code_type="I", **kwargs):
    kwargs.setdefault("silent", True)
    return list(run_search(SearchConfig(n, k, d, code_type, **kwargs)))


def assert_same_classes(codes, classes, n):
    representatives = dedupe(codes)
    error_msg = "FAILED! search found {} classes, expected {}".format(
        len(representatives), len(classes)
    )
    assert len(representatives) == len(classes), error_msg
    for c in classes:
        assert any(
            same_class(code.rows, c.generator.rows, n) for code in representatives
        ), "FAILED! class {} was not found".format(c.generator.to_strings())


##
## configuration
##


def test_default_conditions():
    assert default_conditions("I") == default_conditions("II")
    assert "dual_filter_condition" not in default_conditions("I")
    assert "mu_condition" not in default_conditions("linear")
    assert set(default_conditions("I")) <= set(CONDITIONS)


@pytest.mark.parametrize(
    "kwargs, key",
    [
        (dict(n=13, k=6, d=4), "n"),
        (dict(n=12, k=5, d=4), "k"),
        (dict(n=12, k=6, d=6), "d"),
        (dict(n=12, k=6, d=4, code_type="II"), "type"),
        (dict(n=12, k=6, d=4, order="up"), "order"),
        (dict(n=12, k=6, d=4, processes=0), "processes"),
        (dict(n=12, k=6, d=4, max_solutions=0), "max_solutions"),
        (dict(n=12, k=6, d=4, max_nodes=True), "max_nodes"),
        (dict(n=12, k=6, d=4, time_budget=-1.0), "time_budget"),
        (dict(n=12, k=6, d=4, conditions=["no_such_condition"]), "conditions"),
        (dict(n=12, k=6, d=4, conditions=["mu_condition", "mu_condition"]), "conditions"),
        (dict(n=7, k=4, d=3, code_type="linear", conditions=["mu_condition"]), "conditions"),
    ],
)
def test_config_validation(kwargs, key):
    with pytest.raises(ParameterError) as excinfo:
        SearchConfig(**kwargs)
    assert excinfo.value.key == key


def test_config_condition_toggles():
    config = SearchConfig(12, 6, 4, conditions={"dual_filter_condition": True})
    assert config.conditions == default_conditions("I") + ["dual_filter_condition"]

    config = SearchConfig(12, 6, 4, conditions={"mu_condition": False})
    assert "mu_condition" not in config.conditions

    config = SearchConfig(12, 6, 4)
    other = config.replace(order="asc")
    assert other.order == "asc" and config.order == "desc"
    assert other != config
    assert other.replace(order="desc") == config


##
## nodes
##


def test_starters():
    nodes = list(starters(SearchConfig(12, 6, 4)))
    assert [list(node.matrix().to_strings()) for node in nodes] == [["111110"], ["111000"]]
    assert [node.weights for node in nodes] == [(5,), (3,)]

    nodes = list(starters(SearchConfig(12, 6, 4, order="asc")))
    assert [node.weights for node in nodes] == [(3,), (5,)]

    nodes = list(starters(SearchConfig(8, 4, 4, "II")))
    assert [list(node.matrix().to_strings()) for node in nodes] == [["1110"]]


def test_children_pass_row_conditions():
    config = SearchConfig(12, 6, 4, debug=True)
    conditions = make_conditions(config.conditions)
    monitor = SearchMonitor()
    node = next(starters(config, monitor))

    kids = list(children(node, conditions, monitor))
    assert kids
    for child in kids:
        row, weight = child.rows[-1], child.weights[-1]
        assert weight <= node.weights[-1]
        assert (row & node.rows[0]).bit_count() in mu_set(weight, node.weights[0], 12, 6, 4)
        assert block_sorted(node.partition, BitVector(row, 6))
    assert monitor.report.children_accepted == len(kids)
    assert monitor.report.pruned


def walk_levels(config, weight, levels):
    conditions = make_conditions(ROW_CONDITIONS)
    nodes = [node for node in starters(config) if node.weights == (weight,)]
    for _ in range(levels):
        nodes = [child for node in nodes for child in children(node, conditions)]
    return nodes


def test_span_window_past_cached_depth(monkeypatch):
    config = SearchConfig(22, 11, 6)
    cached = walk_levels(config, 7, 3)
    assert cached

    monkeypatch.setattr(searchengine, "MAX_SPAN_DEPTH", 1)
    walked = walk_levels(config, 7, 3)
    assert [node.rows for node in walked] == [node.rows for node in cached]

    for node in walked:
        assert node.span_depth == 1
        node.verify()
        weights = popcount_array(span_words(full_rows(node.rows, 22), 22))[1:]
        assert (((weights >= 6) & (weights <= 16)) | (weights == 22)).all()


def test_node_verify_detects_drift():
    config = SearchConfig(12, 6, 4)
    node = next(starters(config))
    child = next(children(node, make_conditions(config.conditions)))
    child.verify()

    broken = SearchNode(child.context, child.rows, (4, 4), child.mu, child.partition, child.span)
    with pytest.raises(RuntimeError):
        broken.verify()

    broken = SearchNode(child.context, child.rows, child.weights, child.mu, node.partition, child.span)
    with pytest.raises(RuntimeError):
        broken.verify()


##
## completeness against the oracle
##


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_search_matches_oracle(n):
    corpus = enumerate_all_self_dual(n)
    for d in range(2, 4 * (n // 24) + 5, 2):
        codes = search(n, n // 2, d)
        for code in codes:
            assert classify_type(code) is CodeType.TYPE_I
            assert min_distance(code) >= d
        assert_same_classes(codes, classify(corpus, d, "I"), n)


def test_search_matches_oracle_12(corpus12):
    for d in (2, 4):
        assert_same_classes(search(12, 6, d), classify(corpus12, d, "I"), 12)

    codes = search(12, 6, 4)
    assert len(dedupe(codes)) == 1


def test_type_two_search(corpus8):
    codes = search(8, 4, 4, "II")
    assert codes
    assert all(classify_type(code) is CodeType.TYPE_II for code in codes)
    assert_same_classes(codes, classify(corpus8, 4, "II"), 8)


def test_nonexistent_target():
    error_msg = "FAILED! there is no self-dual (10, 5, 4) code"
    assert search(10, 5, 4) == [], error_msg
    assert search(6, 3, 4) == []


@pytest.mark.parametrize(
    "n", [4, 6, 8, pytest.param(10, marks=pytest.mark.slow)]
)
@pytest.mark.parametrize("name", ROW_CONDITIONS)
def test_row_conditions_only_prune(n, name):
    corpus = enumerate_all_self_dual(n)
    for d in range(2, 4 * (n // 24) + 5, 2):
        codes = search(n, n // 2, d, conditions={name: False})
        assert_same_classes(codes, classify(corpus, d, "I"), n)


def test_linear_search():
    codes = search(7, 4, 3, "linear")
    assert codes
    assert all(min_distance(code) >= 3 for code in codes)
    error_msg = "FAILED! every (7, 4, 3) code is a Hamming code"
    assert len(dedupe(codes)) == 1, error_msg


@pytest.mark.slow
@pytest.mark.parametrize("n", [14, 16])
def test_search_matches_neighbor_closure(n):
    codes = search(n, n // 2, 4)
    assert_same_classes(codes, neighbor_closure_classify(n, 4, "I"), n)


@pytest.mark.slow
def test_type_two_search_16():
    codes = search(16, 8, 4, "II")
    assert_same_classes(codes, neighbor_closure_classify(16, 4, "II"), 16)


@pytest.mark.slow
def test_search_finds_every_class_18():
    codes = search(18, 9, 4, time_budget=600.0)
    representatives = dedupe(codes)
    for c in neighbor_closure_classify(18, 4, "I"):
        assert any(
            same_class(code.rows, c.generator.rows, 18) for code in representatives
        ), "FAILED! class {} was not found".format(c.generator.to_strings())


@pytest.mark.parametrize("n, k, d, code_type", [(12, 6, 4, "I"), (8, 4, 4, "II")])
def test_emitted_codes_respect_mu_table(n, k, d, code_type):
    codes = search(n, k, d, code_type)
    assert codes
    mask = (1 << (n - k)) - 1
    for code in codes:
        rows = [row & mask for row in code.rows]
        for i, ri in enumerate(rows):
            for rj in rows[:i]:
                overlap = (ri & rj).bit_count()
                assert overlap in mu_set(ri.bit_count(), rj.bit_count(), n, k, d)


def test_dual_filter_keeps_every_code():
    with_filter = search(12, 6, 4, conditions={"dual_filter_condition": True})
    assert with_filter == search(12, 6, 4)


##
## limits, reports and output
##


def test_report():
    config = SearchConfig(12, 6, 4, silent=True)
    run = run_search(config)
    codes = list(run)
    report = run.report
    assert report.yields == len(codes)
    assert report.starters == 2
    assert report.nodes_expanded == report.starters + report.children_accepted
    assert report.limit_reached is None
    assert set(report.as_dict()) == {
        "nodes_expanded",
        "starters",
        "children_accepted",
        "yields",
        "wall_time",
        "limit_reached",
        "pruned",
    }
    assert "yields={}".format(len(codes)) in str(report)

    # a second run starts from fresh counters
    assert len(list(run)) == len(codes)
    assert run.report.yields == len(codes)


def test_limits():
    run = run_search(SearchConfig(12, 6, 2, max_solutions=1, silent=True))
    assert len(list(run)) == 1
    assert run.report.limit_reached == "max_solutions"

    run = run_search(SearchConfig(12, 6, 2, max_nodes=3, silent=True))
    list(run)
    assert run.report.limit_reached == "max_nodes"
    assert run.report.nodes_expanded == 3


def test_events():
    logger = RecordingLogger()
    codes = list(run_search(SearchConfig(12, 6, 4), logger))
    names = [event for event, _ in logger.events]
    assert names[0] == "search_started"
    assert names[-1] == "search_done"
    assert names.count("code_found") == len(codes)
    assert logger.events[0][1]["n"] == 12
    assert logger.events[-1][1]["yields"] == len(codes)


def test_parallel_run_matches_sequential():
    sequential = search(12, 6, 2)
    parallel = search(12, 6, 2, processes=2)
    assert [list(code.rows) for code in parallel] == [list(code.rows) for code in sequential]


def failing_finalise(node, conditions, monitor=None):
    raise RuntimeError("finalise failed at depth {}".format(node.depth))


def exiting_finalise(node, conditions, monitor=None):
    os._exit(3)


# workers only see a patched module when they are forked
forked_workers = pytest.mark.skipif(
    multiprocessing.get_start_method() != "fork", reason="needs forked workers"
)


@forked_workers
def test_parallel_worker_error_is_raised(monkeypatch):
    monkeypatch.setattr(searchengine, "finalise", failing_finalise)
    with pytest.raises(RuntimeError, match="finalise failed at depth 6"):
        search(12, 6, 2, processes=2)


@forked_workers
def test_parallel_worker_exit_is_raised(monkeypatch):
    monkeypatch.setattr(searchengine, "WORKER_POLL_SECONDS", 0.1)
    monkeypatch.setattr(searchengine, "finalise", exiting_finalise)
    with pytest.raises(RuntimeError, match="exited with code 3"):
        search(12, 6, 2, processes=2)


def test_save_path(tmp_path):
    path = tmp_path / "results" / "codes.txt"
    codes = search(12, 6, 4, save_path=str(path))
    saved = load_codes(str(path))
    assert saved == codes


def test_debug_run_matches():
    assert search(12, 6, 4, debug=True) == search(12, 6, 4)


def test_get_code():
    codes = list(get_code(12, 6, 4, "I", max_solutions=1))
    assert len(codes) == 1

    config = {"target": {"n": 8, "k": 4, "d": 4, "type": "II"}}
    codes = list(get_code(8, 4, 4, "II", config=config, silent=True))
    assert codes and all(classify_type(code) is CodeType.TYPE_II for code in codes)

    path = examples_path("configs", "hamming_8_4_4_type2.json")
    codes = list(get_code(8, 4, 4, "II", config=path, silent=True))
    assert len(codes) == 1
    assert min_distance(codes[0]) == 4

    # self-dual conditions are dropped for a linear target
    config = SearchConfig(12, 6, 4, conditions={"dual_filter_condition": True})
    codes = list(get_code(7, 4, 3, "linear", config=config, silent=True))
    assert codes


def test_unbounded_long_search_warns():
    with pytest.warns(RuntimeWarning):
        run_search(SearchConfig(72, 36, 16, "II"))
