import json

import pytest

from abelian_words.detector import IncrementalChecker, find_occurrences
from abelian_words.known import known_exact
from abelian_words.search import (
    Checkpoint,
    CheckpointError,
    Search,
    SearchInterrupted,
    frontier,
    resume_search,
    search_l,
    verify_table,
)
from abelian_words.words import BinaryWord, parse_word


def brute_l(k, limit=24):
    """Longest avoider by plain enumeration of every word, level by level."""
    level = [""]
    best = ""
    for _ in range(limit):
        nxt = [w + b for w in level for b in "01" if not find_occurrences(w + b, k, "first")]
        if not nxt:
            return len(best), best
        level = nxt
        best = min(nxt)
    raise AssertionError("limit too small")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_matches_plain_enumeration(k):
    length, witness = brute_l(k)
    out = search_l(k)
    assert (out.l_of_k, str(out.witness)) == (length, witness)


@pytest.mark.parametrize("k, length, witness", [
    (1, 3, "010"), (2, 10, "0011100011"), (4, 26, "00000011111110000000111111"),
])
def test_known_rows(k, length, witness):
    out = search_l(k)
    assert out.exhausted
    assert out.l_of_k == length
    assert str(out.witness) == witness
    assert out.depth_cap == k * k + 6 * k


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_python_engine_agrees(k):
    assert search_l(k, engine="python") == search_l(k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_worker_count_does_not_change_outcome(k):
    ref = search_l(k)
    for workers in (2, 4):
        assert search_l(k, worker_count=workers) == ref
        assert search_l(k, worker_count=workers, split_depth=3) == ref


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fix_first_keeps_value_and_witness(k):
    ref = search_l(k)
    out = search_l(k, fix_first=True)
    assert (out.l_of_k, out.witness, out.exhausted) == (ref.l_of_k, ref.witness, ref.exhausted)
    assert out.nodes_visited < ref.nodes_visited


def test_depth_cap_branch():
    out = search_l(2, depth_cap=5)
    assert not out.exhausted
    assert out.l_of_k == 5 and len(out.witness) == 5
    assert out.witness == parse_word("00010")
    for workers, split in ((1, 12), (2, 2), (3, 3)):
        assert search_l(2, depth_cap=5, worker_count=workers, split_depth=split) == out
    assert search_l(2, depth_cap=5, engine="python") == out


def test_depth_cap_hit_inside_parallel_task():
    ref = search_l(4, depth_cap=20)
    assert not ref.exhausted and ref.l_of_k == 20
    assert search_l(4, depth_cap=20, worker_count=3, split_depth=6) == ref
    assert search_l(4, depth_cap=20, engine="python") == ref


def test_exhausted_runs_respect_upper_bound():
    for k in range(1, 8):
        out = search_l(k)
        assert out.exhausted and out.l_of_k < k * k + 6 * k
        assert out.witness[0] == 0
        assert out.witness.complement() != out.witness
        assert find_occurrences(out.witness.complement(), k) == []


def test_argument_errors():
    with pytest.raises(ValueError):
        search_l(0)
    with pytest.raises(ValueError):
        search_l(2, depth_cap=0)
    with pytest.raises(ValueError):
        search_l(2, worker_count=0)
    with pytest.raises(ValueError):
        search_l(2, engine="fortran")


# -- frontier ---------------------------------------------------------------


def test_frontier_of_root():
    assert frontier(1, 7, b"") == [b"\x00", b"\x01"]
    assert frontier(1, 7, b"", fix_first=True) == [b"\x00"]


def test_frontier_covers_rest_of_tree():
    """Visiting node-by-node through frontiers reproduces the preorder walk."""
    k = 3
    cap = k * k + 6 * k
    seen = [b""]
    path = b""
    while True:
        roots = frontier(k, cap, path)
        if not roots:
            break
        path = roots[0]
        seen.append(path)
    assert len(seen) == search_l(k).nodes_visited
    assert seen == sorted(seen)
    assert max(seen, key=len) == known_exact(k).witness.bits


# -- checkpoints ------------------------------------------------------------


@pytest.mark.parametrize("engine", ["numba", "python"])
def test_interrupt_and_resume_k3(engine):
    ref = search_l(3)
    for pause in (1, 2, 7, 50, 200, 400, 516):
        s = Search(3, engine=engine)
        assert s.run(max_nodes=pause) is None
        cp = s.checkpoint()
        path = parse_word(cp.path)
        assert find_occurrences(path, 3) == []
        out = resume_search(Checkpoint.loads(cp.dumps()), engine=engine)
        assert out == ref
        assert str(out.witness) == "000011111000001111"


def test_repeated_pauses_match_uninterrupted():
    ref = search_l(4)
    s = Search(4)
    while (out := s.run(max_nodes=97)) is None:
        s = Search.from_checkpoint(Checkpoint.loads(s.checkpoint().dumps()))
    assert out == ref


def test_checkpoint_at_start():
    cp = Search(3).checkpoint()
    assert cp.to_json() == {
        "version": 1, "k": 3, "depth_cap": 27, "path": "",
        "best_len": 0, "best_witness": "", "nodes_visited": 1,
    }
    assert resume_search(cp) == search_l(3)


def test_checkpoint_round_trip(tmp_path):
    s = Search(4)
    s.run(max_nodes=1000)
    cp = s.checkpoint()
    assert Checkpoint.from_json(cp.to_json()) == cp
    assert Checkpoint.loads(cp.dumps()) == cp
    cp.save(tmp_path / "cp.json")
    assert Checkpoint.load(tmp_path / "cp.json") == cp
    assert json.loads((tmp_path / "cp.json").read_text())["version"] == 1
    assert resume_search(tmp_path / "cp.json") == search_l(4)


def test_resume_in_parallel():
    ref = search_l(4)
    s = Search(4)
    s.run(max_nodes=1234)
    assert resume_search(s.checkpoint(), worker_count=3, split_depth=8) == ref


def good():
    return Search(3).checkpoint().to_json()


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(version=2),
    lambda d: d.pop("version"),
    lambda d: d.pop("path"),
    lambda d: d.update(k="3"),
    lambda d: d.update(k=True),
    lambda d: d.update(k=0),
    lambda d: d.update(path="01x"),
    lambda d: d.update(path="0 1"),
    lambda d: d.update(best_len=5),
    lambda d: d.update(path="000000", best_len=6, best_witness="000000"),
    lambda d: d.update(nodes_visited=0),
    lambda d: d.update(depth_cap=2, path="001", best_len=3, best_witness="001"),
])
def test_malformed_checkpoints(mutate):
    data = good()
    mutate(data)
    with pytest.raises(CheckpointError):
        Checkpoint.from_json(data)


def test_unreadable_checkpoints(tmp_path):
    with pytest.raises(CheckpointError):
        Checkpoint.loads("{not json")
    with pytest.raises(CheckpointError):
        Checkpoint.loads("[1, 2]")
    with pytest.raises(CheckpointError):
        Checkpoint.load(tmp_path / "missing.json")


@pytest.mark.parametrize("workers", [1, 2])
def test_periodic_checkpoints_are_resumable(tmp_path, workers):
    ref = search_l(5)
    target = tmp_path / "cp.json"
    snapshots = []
    original_save = Checkpoint.save

    def spy(self, filename):
        snapshots.append(self)
        original_save(self, filename)

    Checkpoint.save = spy
    try:
        search_l(5, worker_count=workers, split_depth=8, checkpoint_path=target, checkpoint_every=3000)
    finally:
        Checkpoint.save = original_save
    assert len(snapshots) >= 5
    assert [c.nodes_visited for c in snapshots] == sorted(c.nodes_visited for c in snapshots)
    for cp in snapshots[:: max(1, len(snapshots) // 4)]:
        assert resume_search(cp) == ref


@pytest.mark.parametrize("workers", [1, 2])
def test_should_stop_interrupts_with_checkpoint(tmp_path, workers):
    calls = {"n": 0}

    def stop():
        calls["n"] += 1
        return calls["n"] >= 3

    target = tmp_path / "cp.json"
    with pytest.raises(SearchInterrupted) as info:
        search_l(5, worker_count=workers, split_depth=8, checkpoint_path=target,
                 checkpoint_every=1000, should_stop=stop)
    cp = info.value.checkpoint
    assert Checkpoint.load(target) == cp
    assert resume_search(cp) == search_l(5)


# -- DFS soundness ----------------------------------------------------------


def test_every_visited_prefix_avoids():
    s = Search(4, engine="python")
    visited = 0
    while s.run(max_nodes=13) is None:
        path = parse_word(s.checkpoint().path)
        assert find_occurrences(path, 4, "first") == []
        visited += 1
    assert visited > 100


def test_pruned_children_really_contain_squares():
    """Sampled blocked pushes along the DFS contain squares per the batch detector."""
    s = Search(3, engine="python")
    checked = 0
    while s.run(max_nodes=5) is None:
        path = s.checkpoint().path
        c = IncrementalChecker(3, path)
        for b in "01":
            if c.push(int(b)):
                assert find_occurrences(path + b, 3)
                checked += 1
            c.pop()
    assert checked > 20


# -- table ------------------------------------------------------------------


def test_verify_table_two_rows():
    checks = verify_table(2)
    assert [c.k for c in checks] == [1, 2]
    assert all(c.matches for c in checks)


def test_verify_table_six_rows():
    checks = verify_table(6)
    assert [c.outcome.l_of_k for c in checks] == [3, 10, 18, 26, 34, 42]
    assert all(c.matches for c in checks)


def test_verify_table_seven_rows():
    checks = verify_table(7)
    assert checks[-1].matches
    assert str(checks[-1].outcome.witness) == "00000000000001000001100001111001111101111111111111"


def test_verify_table_reports_mismatch():
    check = verify_table(2, depth_cap=6)[1]
    assert not check.matches


def test_verify_table_range():
    with pytest.raises(ValueError):
        verify_table(11)


def test_k8_with_symmetry_and_workers():
    row = known_exact(8)
    out = search_l(8, fix_first=True, worker_count=2)
    assert (out.l_of_k, out.witness, out.exhausted) == (row.length, row.witness, True)


@pytest.mark.slow
@pytest.mark.parametrize("k", [9, 10])
def test_extended_rows(k):
    row = known_exact(k)
    out = search_l(k, fix_first=True)
    assert out.exhausted
    assert (out.l_of_k, out.witness) == (row.length, row.witness)
