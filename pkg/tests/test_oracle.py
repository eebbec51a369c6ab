import pytest

from pyselfdual.oracle import (
    MAX_BRUTE_FORCE_LENGTH,
    OracleBudgetError,
    brute_force_equivalent,
    classify,
    enumerate_all_self_dual,
    load_or_build_corpus,
    mass_formula,
    neighbor_closure,
    neighbor_closure_classify,
    same_class,
)

from conftest import hamming8, i2_power, corpus8, corpus12

# number of inequivalent self-dual codes of each length
CLASS_COUNTS = {2: 1, 4: 1, 6: 1, 8: 2, 10: 2, 12: 3, 14: 4, 16: 7, 18: 9}


def test_mass_formula():
    assert [mass_formula(n) for n in (2, 4, 6, 8, 10, 12)] == [1, 3, 15, 135, 2295, 75735]
    with pytest.raises(ValueError):
        mass_formula(7)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_direct_enumeration(n):
    corpus = enumerate_all_self_dual(n)
    error_msg = "FAILED! {} codes of length {}, expected {}".format(
        corpus.total, n, mass_formula(n)
    )
    assert corpus.total == mass_formula(n), error_msg
    assert len(set(corpus.codes)) == corpus.total
    assert sum(c.orbit_size for c in corpus.classes) == corpus.total
    assert len(corpus) == CLASS_COUNTS[n]


def test_direct_enumeration_12(corpus12):
    assert corpus12.total == mass_formula(12)
    assert sum(c.orbit_size for c in corpus12.classes) == corpus12.total
    assert len(corpus12) == 3

    strong = classify(corpus12, 4)
    assert len(strong) == 1
    assert strong[0].code_type == "I"
    assert strong[0].orbit_size == corpus12.total - sum(
        c.orbit_size for c in corpus12.classes if c.d == 2
    )


def test_classes_of_length_eight(corpus8):
    sizes = sorted((c.code_type, c.d, c.orbit_size) for c in corpus8.classes)
    assert sizes == [("I", 2, 105), ("II", 4, 30)]
    assert len(classify(corpus8, 4, "II")) == 1
    assert classify(corpus8, 4, "I") == []
    assert classify(enumerate_all_self_dual(10), 4, "I") == []

    with pytest.raises(ValueError):
        classify(corpus8, 2, "III")


def test_length_guards():
    with pytest.raises(ValueError):
        enumerate_all_self_dual(14)
    with pytest.raises(ValueError):
        enumerate_all_self_dual(9)
    with pytest.raises(ValueError):
        neighbor_closure(20)


def test_brute_force_equivalent(hamming8, i2_power):
    rows = hamming8.rows
    permuted = hamming8.permute_columns([3, 1, 4, 0, 5, 2, 7, 6]).rows
    assert brute_force_equivalent(rows, permuted, 8)
    assert not brute_force_equivalent(rows, i2_power(8).rows, 8)
    assert same_class(rows, permuted, 8)
    assert not same_class(rows, i2_power(8).rows, 8)

    with pytest.raises(ValueError):
        brute_force_equivalent(rows, rows, MAX_BRUTE_FORCE_LENGTH + 2)


def test_closure_matches_direct(corpus12):
    closure = neighbor_closure(12)
    assert len(closure) == 3
    for c in corpus12.classes:
        assert any(same_class(c.generator.rows, o.generator.rows, 12) for o in closure.classes)
    assert [len(neighbor_closure_classify(12, d)) for d in (2, 4)] == [3, 1]


def test_closure_matches_brute_force(corpus8):
    closure = neighbor_closure(8)
    assert len(closure) == 2
    for o in closure.classes:
        matches = [
            c for c in corpus8.classes if brute_force_equivalent(o.generator.rows, c.generator.rows, 8)
        ]
        assert len(matches) == 1
        assert matches[0].d == o.d


def test_closure_budget():
    with pytest.raises(OracleBudgetError) as excinfo:
        neighbor_closure(12, max_classes=1)
    assert excinfo.value.max_classes == 1


def test_corpus_cache(tmp_path):
    built = load_or_build_corpus(8, str(tmp_path))
    assert built.codes is not None
    assert (tmp_path / "selfdual_n8.md5.json").exists()

    cached = load_or_build_corpus(8, str(tmp_path))
    assert cached.codes is None
    assert cached.total == built.total
    assert [c.generator for c in cached.classes] == [c.generator for c in built.classes]
    assert [c.orbit_size for c in cached.classes] == [c.orbit_size for c in built.classes]

    # a modified cache file is rebuilt
    with open(tmp_path / "selfdual_n8.txt", "a") as f:
        f.write("\n")
    assert load_or_build_corpus(8, str(tmp_path)).codes is not None


@pytest.mark.slow
@pytest.mark.parametrize("n", [14, 16, 18])
def test_closure_class_counts(n):
    assert len(neighbor_closure(n)) == CLASS_COUNTS[n]
