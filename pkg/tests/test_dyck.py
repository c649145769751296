import itertools

import pytest

from permvol.dyck import (
    LEAF,
    BoundExceeded,
    DyckPath,
    EmptyPath,
    InvalidPath,
    Leaf,
    Node,
    catalan,
    compose,
    decompose,
    enumerate_by_first_return,
    enumerate_paths,
    first_return,
    from_binary_tree,
    leaf_count,
    north_step_labels,
    to_binary_tree,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]

P = DyckPath.parse


def catalan_recurrence(n):
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[k - 1] * c[m - k] for k in range(1, m + 1)))
    return c[n]


def brute_force_paths(n):
    """Every N/E word of length 2n that stays weakly above the diagonal."""
    out = []
    for word in itertools.product("NE", repeat=2 * n):
        x = y = 0
        ok = True
        for ch in word:
            if ch == "N":
                y += 1
            else:
                x += 1
            if x > y:
                ok = False
                break
        if ok and x == y:
            out.append("".join(word))
    return out


def labels_from_definition(path):
    """Literal lattice-point reading of the north-step rule."""
    pts = path.points()
    n = path.n
    out = []
    for pos, step in enumerate(path.steps):
        if not step:
            continue
        u, v = pts[pos]
        tail = [(a - u, b - v) for a, b in pts[pos:]]
        K = []
        for k in range(1, n - u + 1):
            if (k, k) not in tail:
                continue
            upto = tail[: tail.index((k, k)) + 1]
            if all(b >= a for a, b in upto):
                K.append(k)
        assert K, "K must be non-empty"
        out.append((max(K), min(K), u))
    return out


# enumeration ----------------------------------------------------------------

def test_catalan_counts():
    assert [sum(1 for _ in enumerate_paths(n)) for n in range(13)] == CATALAN
    assert [catalan(n) for n in range(13)] == CATALAN
    assert catalan_recurrence(8) == 1430


def test_enumeration_small_cases():
    assert [str(p) for p in enumerate_paths(0)] == [""]
    assert len(list(enumerate_paths(3))) == 5


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_matches_brute_force_in_order(n):
    got = [str(p) for p in enumerate_paths(n)]
    expected = sorted(brute_force_paths(n), key=lambda w: w.translate(str.maketrans("NE", "01")))
    assert got == expected
    assert len(set(got)) == len(got)


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        next(enumerate_paths(15))
    with pytest.raises(BoundExceeded):
        next(enumerate_paths(5, bound=4))


def test_enumeration_is_lazy():
    gen = enumerate_paths(14)
    first = next(gen)
    assert str(first) == "N" * 14 + "E" * 14


# paths -------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["NEEN", "NNE", "EN", "NXE"])
def test_invalid_paths(text):
    with pytest.raises(InvalidPath):
        P(text)


def test_path_text_round_trip():
    assert str(P("nennee")) == "NENNEE"
    assert P("NENNEE").n == 3


# labels -----------------------------------------------------------------------

@pytest.mark.parametrize(
    "text, labels",
    [
        ("NENNEE", [(3, 1, 0), (2, 2, 1), (1, 1, 1)]),
        ("NNNEEE", [(3, 3, 0), (2, 2, 0), (1, 1, 0)]),
        ("NNEENE", [(3, 2, 0), (1, 1, 0), (1, 1, 2)]),
        ("NNENEE", [(3, 3, 0), (2, 1, 0), (1, 1, 1)]),
        ("NENENE", [(3, 1, 0), (2, 1, 1), (1, 1, 2)]),
    ],
)
def test_labels_n3(text, labels):
    assert north_step_labels(P(text)) == labels


def test_seven_step_example_reconstructed():
    # The worked 7-step example gives only the label list; the path below is
    # the unique 7-Dyck path producing it (found by exhaustive search).
    want = [(7, 1, 0), (6, 4, 1), (3, 1, 1), (2, 1, 2), (1, 1, 3), (2, 2, 5), (1, 1, 5)]
    matches = [str(p) for p in enumerate_paths(7) if north_step_labels(p) == want]
    assert matches == ["NENNENENEENNEE"]
    path = P(matches[0])
    assert path.points()[3] == (1, 2)  # the highlighted step starts at (1, 2)
    assert north_step_labels(path)[2] == (3, 1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_labels_match_definition_and_invariants(n):
    for path in enumerate_paths(n):
        labels = north_step_labels(path)
        assert labels == labels_from_definition(path)
        assert len(labels) == n
        assert labels[0][0] == n and labels[0][2] == 0
        for d, i, u in labels:
            assert 1 <= i <= d and u + d <= n


# decomposition ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "text, k, bottom, top",
    [("NENNEE", 1, "", "NNEE"), ("NNNEEE", 3, "NNEE", ""), ("NNEENE", 2, "NE", "NE")],
)
def test_decompose_examples(text, k, bottom, top):
    got = decompose(P(text))
    assert (got[0], str(got[1]), str(got[2])) == (k, bottom, top)


def test_decompose_empty():
    with pytest.raises(EmptyPath):
        decompose(DyckPath(()))
    with pytest.raises(EmptyPath):
        first_return(DyckPath(()))


@pytest.mark.parametrize("n", range(1, 11))
def test_decompose_is_a_bijection_per_first_return(n):
    by_k = {}
    for path in enumerate_paths(n):
        k, b, t = decompose(path)
        assert compose(b, t) == path
        assert b.n == k - 1 and t.n == n - k
        by_k.setdefault(k, set()).add((b.steps, t.steps))
    for k in range(1, n + 1):
        # injective (distinct pairs) and surjective (count equals the product)
        assert len(by_k[k]) == catalan(k - 1) * catalan(n - k)
    assert sum(catalan(k - 1) * catalan(n - k) for k in range(1, n + 1)) == catalan(n)


def test_enumerate_by_first_return_partitions():
    n = 6
    parts = [set(enumerate_by_first_return(n, k)) for k in range(1, n + 1)]
    assert set().union(*parts) == set(enumerate_paths(n))
    assert sum(map(len, parts)) == catalan(n)
    for k, part in enumerate(parts, start=1):
        assert all(first_return(p) == k for p in part)


# binary trees ----------------------------------------------------------------------

def test_tree_examples():
    assert to_binary_tree(DyckPath(())) == LEAF
    assert to_binary_tree(P("NE")) == Node(LEAF, LEAF)
    assert to_binary_tree(P("NNEE")) == Node(Node(LEAF, LEAF), LEAF)
    assert to_binary_tree(P("NENE")) == Node(LEAF, Node(LEAF, LEAF))


@pytest.mark.parametrize("n", range(0, 11))
def test_tree_round_trip(n):
    seen = set()
    for path in enumerate_paths(n):
        tree = to_binary_tree(path)
        assert leaf_count(tree) == n + 1
        assert from_binary_tree(tree) == path
        seen.add(tree)
    assert len(seen) == catalan(n)


def test_leaf_is_leaf():
    assert isinstance(LEAF, Leaf) and leaf_count(LEAF) == 1
