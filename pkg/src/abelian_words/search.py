"""Exhaustive lexicographic backtracking for l(k).

The search walks binary words depth first, 0 before 1, and prunes a branch
as soon as the newest letter closes an abelian square of order >= k.  The
first word to reach the maximal depth is the lexicographically least
avoider of that length.

Progress is described by the last visited node alone.  Everything still
to explore is the "frontier" of that node: its own children followed by
the right siblings of its ancestors, deepest first.  That makes a
checkpoint a single path, and lets parallel runs be reduced in preorder so
that every worker count gives the same outcome, node count included.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import signal
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterator, Optional, Union

import numpy as np

from .detector import IncrementalChecker
from .known import known_exact
from .words import BinaryWord, WordParseError, parse_word, serialize_word

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
DEFAULT_SPLIT_DEPTH = 12
DEFAULT_CHECKPOINT_EVERY = 10**7
_CHUNK = 1 << 22


class CheckpointError(ValueError):
    """A checkpoint file is malformed, inconsistent or from another version."""


class SearchInterrupted(Exception):
    def __init__(self, checkpoint: "Checkpoint"):
        self.checkpoint = checkpoint
        super().__init__(f"search interrupted after {checkpoint.nodes_visited} nodes")


def default_depth_cap(k: int) -> int:
    # every binary word of length k^2 + 6k has an abelian square of order >= k
    return k * k + 6 * k


@dataclass(frozen=True)
class SearchOutcome:
    k: int
    l_of_k: int
    witness: BinaryWord
    nodes_visited: int
    exhausted: bool
    depth_cap: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l_of_k,
            "witness": serialize_word(self.witness),
            "exhausted": self.exhausted,
            "nodes": self.nodes_visited,
        }


@dataclass(frozen=True)
class Checkpoint:
    k: int
    depth_cap: int
    path: str
    best_len: int
    best_witness: str
    nodes_visited: int

    def to_json(self) -> dict:
        return {"version": CHECKPOINT_VERSION, **asdict(self)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "Checkpoint":
        if not isinstance(data, dict):
            raise CheckpointError("checkpoint must be a JSON object")
        if data.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(f"unsupported checkpoint version {data.get('version')!r}")
        fields = {
            "k": int, "depth_cap": int, "path": str,
            "best_len": int, "best_witness": str, "nodes_visited": int,
        }
        values = {}
        for name, kind in fields.items():
            if name not in data:
                raise CheckpointError(f"checkpoint is missing {name!r}")
            value = data[name]
            if not isinstance(value, kind) or isinstance(value, bool):
                raise CheckpointError(f"checkpoint field {name!r} has the wrong type")
            values[name] = value
        cp = cls(**values)
        cp.validate()
        return cp

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint is not valid JSON: {exc}") from None
        return cls.from_json(data)

    def validate(self) -> None:
        if self.k < 1 or self.depth_cap < 1:
            raise CheckpointError("k and depth_cap must be positive")
        try:
            path = parse_word(self.path)
            witness = parse_word(self.best_witness)
        except WordParseError as exc:
            raise CheckpointError(f"bad word in checkpoint: {exc}") from None
        if "".join(self.path.split()) != self.path or "".join(self.best_witness.split()) != self.best_witness:
            raise CheckpointError("checkpoint words may not contain whitespace")
        if len(path) > self.depth_cap:
            raise CheckpointError("path is longer than depth_cap")
        if len(witness) != self.best_len or self.best_len < len(path):
            raise CheckpointError("best_witness does not match best_len")
        if self.nodes_visited < 1:
            raise CheckpointError("nodes_visited must be positive")
        for w in (path, witness):
            checker = IncrementalChecker(self.k)
            if any(checker.push(b) for b in w):
                raise CheckpointError("checkpoint word contains a forbidden abelian square")

    def save(self, filename: Union[str, os.PathLike]) -> None:
        """Write atomically so an interrupted save never leaves a torn file."""
        target = Path(filename)
        fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=target.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.dumps() + "\n")
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    @classmethod
    def load(cls, filename: Union[str, os.PathLike]) -> "Checkpoint":
        try:
            text = Path(filename).read_text()
        except OSError as exc:
            raise CheckpointError(f"cannot read checkpoint: {exc}") from None
        return cls.loads(text)


# -- walkers ---------------------------------------------------------------

PAUSED, DONE, CAP = 0, 1, 2


class _PythonWalker:
    """Reference walker built on IncrementalChecker; slow but transparent."""

    def __init__(self, k: int, cap: int):
        self.k, self.cap = k, cap
        self.checker = IncrementalChecker(k)
        self.nodes = 0
        self.best_len = 0
        self.best = b""
        self.last = b""

    def load(self, path: bytes, nodes: int, best: bytes) -> None:
        self.checker = IncrementalChecker(self.k, BinaryWord(path))
        self.nodes, self.best_len, self.best, self.last = nodes, len(best), best, path

    def visit_root(self, root: bytes) -> bool:
        self.checker = IncrementalChecker(self.k, BinaryWord(root))
        self._visit()
        return len(root) == self.cap

    def _visit(self) -> None:
        self.nodes += 1
        path = self.checker.word.bits
        self.last = path
        if len(path) > self.best_len:
            self.best_len, self.best = len(path), path

    def walk(self, stop_depth: int, budget: int) -> int:
        c = self.checker
        visited = 0
        while visited < budget:
            moved = False
            if len(c) < self.cap:
                for b in (0, 1):
                    if not c.push(b):
                        moved = True
                        break
                    c.pop()
            if not moved:
                while len(c) > stop_depth:
                    if c.pop() == 0:
                        if not c.push(1):
                            moved = True
                            break
                        c.pop()
                if not moved:
                    self.checker = IncrementalChecker(self.k, BinaryWord(self.last))
                    return DONE
            visited += 1
            self._visit()
            if len(c) == self.cap:
                return CAP
        return PAUSED

    @property
    def path(self) -> bytes:
        return self.last


class _NumbaWalker:
    def __init__(self, k: int, cap: int):
        from . import _kernel

        self._kernel = _kernel
        self.k, self.cap = k, cap
        self.letters = np.zeros(cap + 1, np.int8)
        self.sums = np.zeros(cap + 2, np.int64)
        self.best_letters = np.zeros(cap + 1, np.int8)
        self.state = np.zeros(5, np.int64)

    def _set_path(self, path: bytes) -> None:
        n = len(path)
        self.letters[:n] = np.frombuffer(path, np.int8)
        self.sums[0] = 0
        np.cumsum(self.letters[:n], out=self.sums[1 : n + 1])
        self.state[0] = n
        self.state[3] = n

    def load(self, path: bytes, nodes: int, best: bytes) -> None:
        self._set_path(path)
        self.best_letters[: len(best)] = np.frombuffer(best, np.int8)
        self.state[1] = nodes
        self.state[2] = len(best)

    def visit_root(self, root: bytes) -> bool:
        self._set_path(root)
        self.state[1] += 1
        if len(root) > self.state[2]:
            self.state[2] = len(root)
            self.best_letters[: len(root)] = self.letters[: len(root)]
        return len(root) == self.cap

    def walk(self, stop_depth: int, budget: int) -> int:
        self._kernel.walk(
            self.k, self.cap, self.letters, self.sums, self.state,
            self.best_letters, stop_depth, budget,
        )
        return int(self.state[4])

    @property
    def nodes(self) -> int:
        return int(self.state[1])

    @nodes.setter
    def nodes(self, value: int) -> None:
        self.state[1] = value

    @property
    def best_len(self) -> int:
        return int(self.state[2])

    @property
    def best(self) -> bytes:
        return self.best_letters[: self.best_len].tobytes()

    @property
    def path(self) -> bytes:
        return self.letters[: int(self.state[3])].tobytes()


ENGINES = {"numba": _NumbaWalker, "python": _PythonWalker}


def _make_walker(engine: str, k: int, cap: int):
    try:
        return ENGINES[engine](k, cap)
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}") from None


# -- frontier and shallow expansion -----------------------------------------


def frontier(k: int, cap: int, path: bytes, fix_first: bool = False) -> list[bytes]:
    """Unvisited subtree roots left after visiting ``path``, in preorder."""
    checker = IncrementalChecker(k, BinaryWord(path))
    roots = []
    if len(path) < cap:
        for b in (0, 1):
            if fix_first and not path and b == 1:
                continue
            if not checker.push(b):
                roots.append(path + bytes([b]))
            checker.pop()
    for j in range(len(path) - 1, -1, -1):
        checker.pop()
        if path[j] == 0 and not (fix_first and j == 0):
            if not checker.push(1):
                roots.append(path[:j] + b"\x01")
            checker.pop()
    return roots


def _expand(k: int, roots: list[bytes], split_depth: int) -> Iterator[tuple[str, bytes]]:
    """Preorder items: ("visit", node) above split_depth, ("task", root) at it."""
    for root in roots:
        if len(root) >= split_depth:
            yield "task", root
            continue
        checker = IncrementalChecker(k, BinaryWord(root))
        yield from _expand_from(checker, split_depth)


def _expand_from(checker: IncrementalChecker, split_depth: int) -> Iterator[tuple[str, bytes]]:
    yield "visit", checker.word.bits
    for b in (0, 1):
        if not checker.push(b):
            if len(checker) >= split_depth:
                yield "task", checker.word.bits
            else:
                yield from _expand_from(checker, split_depth)
        checker.pop()


def _run_task(args) -> tuple[int, bytes, bytes, bool]:
    k, cap, root, engine = args
    walker = _make_walker(engine, k, cap)
    hit = walker.visit_root(root)
    if not hit:
        hit = walker.walk(len(root), 1 << 62) == CAP
    return walker.nodes, walker.best, walker.path, hit


def _ignore_sigint() -> None:
    signal.signal(signal.SIGINT, signal.SIG_IGN)


# -- driver -----------------------------------------------------------------


class Search:
    """Resumable search state for one k.

    The state is the last visited node plus running totals, exactly the
    content of a :class:`Checkpoint`.
    """

    def __init__(
        self,
        k: int,
        depth_cap: Optional[int] = None,
        *,
        engine: str = "numba",
        fix_first: bool = False,
    ):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if depth_cap is None:
            depth_cap = default_depth_cap(k)
        if depth_cap < 1:
            raise ValueError(f"depth_cap must be >= 1, got {depth_cap}")
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}")
        self.k = k
        self.depth_cap = depth_cap
        self.engine = engine
        self.fix_first = fix_first
        # the empty word is the first visited node
        self.path = b""
        self.nodes = 1
        self.best = b""
        self.finished = False
        self.cap_hit = False

    @classmethod
    def from_checkpoint(cls, cp: Checkpoint, *, engine: str = "numba", fix_first: bool = False) -> "Search":
        cp.validate()
        s = cls(cp.k, cp.depth_cap, engine=engine, fix_first=fix_first)
        s.path = parse_word(cp.path).bits
        s.best = parse_word(cp.best_witness).bits
        s.nodes = cp.nodes_visited
        return s

    def checkpoint(self) -> Checkpoint:
        return Checkpoint(
            k=self.k,
            depth_cap=self.depth_cap,
            path=serialize_word(BinaryWord(self.path)),
            best_len=len(self.best),
            best_witness=serialize_word(BinaryWord(self.best)),
            nodes_visited=self.nodes,
        )

    def outcome(self) -> SearchOutcome:
        if not self.finished:
            raise RuntimeError("search has not finished")
        return SearchOutcome(
            k=self.k,
            l_of_k=self.depth_cap if self.cap_hit else len(self.best),
            witness=BinaryWord(self.best),
            nodes_visited=self.nodes,
            exhausted=not self.cap_hit,
            depth_cap=self.depth_cap,
        )

    def run(
        self,
        *,
        workers: int = 1,
        max_nodes: Optional[int] = None,
        split_depth: int = DEFAULT_SPLIT_DEPTH,
        checkpoint_path: Optional[Union[str, os.PathLike]] = None,
        checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
        should_stop: Optional[Callable[[], bool]] = None,
    ) -> Optional[SearchOutcome]:
        """Advance the search.

        Returns the outcome when the tree is finished (or the depth cap was
        reached), or ``None`` when paused after ``max_nodes`` further
        visits.  When ``should_stop`` turns true the current state is
        checkpointed and :class:`SearchInterrupted` is raised.  Pausing via
        ``max_nodes`` always runs in this process.
        """
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        if self.finished:
            return self.outcome()
        self._ckpt_path = checkpoint_path
        self._ckpt_every = checkpoint_every
        self._ckpt_nodes = self.nodes
        self._should_stop = should_stop or (lambda: False)
        roots = frontier(self.k, self.depth_cap, self.path, self.fix_first)
        if workers == 1 or max_nodes is not None or self.depth_cap <= split_depth:
            paused = self._run_serial(roots, max_nodes)
        else:
            paused = False
            self._run_parallel(roots, workers, split_depth)
        if paused:
            return None
        self.finished = True
        return self.outcome()

    def _tick(self) -> None:
        if self._ckpt_path is not None and self.nodes - self._ckpt_nodes >= self._ckpt_every:
            self.checkpoint().save(self._ckpt_path)
            self._ckpt_nodes = self.nodes
            logger.info("checkpoint at %d nodes, best %d", self.nodes, len(self.best))
        if self._should_stop():
            cp = self.checkpoint()
            if self._ckpt_path is not None:
                cp.save(self._ckpt_path)
            raise SearchInterrupted(cp)

    def _run_serial(self, roots: list[bytes], max_nodes: Optional[int]) -> bool:
        walker = _make_walker(self.engine, self.k, self.depth_cap)
        walker.load(self.path, self.nodes, self.best)
        limit = None if max_nodes is None else self.nodes + max_nodes
        chunk = max(1, min(_CHUNK, self._ckpt_every))

        def sync():
            self.path, self.nodes, self.best = walker.path, walker.nodes, walker.best

        for i, root in enumerate(roots):
            if walker.visit_root(root):
                sync()
                self.cap_hit = True
                return False
            while True:
                budget = chunk if limit is None else min(chunk, limit - walker.nodes)
                status = walker.walk(len(root), budget) if budget > 0 else PAUSED
                sync()
                if status == CAP:
                    self.cap_hit = True
                    return False
                if status == DONE:
                    break
                if limit is not None and self.nodes >= limit:
                    return True
                self._tick()
            if limit is not None and self.nodes >= limit and i + 1 < len(roots):
                return True
        return False

    def _run_parallel(self, roots: list[bytes], workers: int, split_depth: int) -> None:
        from . import _kernel

        if self.engine == "numba":
            _kernel.warm_up()
        items = list(_expand(self.k, roots, split_depth))
        tasks = [(self.k, self.depth_cap, node, self.engine) for kind, node in items if kind == "task"]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers, initializer=_ignore_sigint) as pool:
            results = pool.imap(_run_task, tasks, chunksize=1)
            for kind, node in items:
                if kind == "visit":
                    self.nodes += 1
                    self.path = node
                    if len(node) > len(self.best):
                        self.best = node
                else:
                    nodes, best, last, hit = next(results)
                    self.nodes += nodes
                    self.path = last
                    if len(best) > len(self.best):
                        self.best = best
                    if hit:
                        self.cap_hit = True
                        pool.terminate()
                        return
                self._tick()


def search_l(
    k: int,
    depth_cap: Optional[int] = None,
    worker_count: int = 1,
    *,
    engine: str = "numba",
    fix_first: bool = False,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    checkpoint_path: Optional[Union[str, os.PathLike]] = None,
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
    should_stop: Optional[Callable[[], bool]] = None,
) -> SearchOutcome:
    """Compute l(k) and its lexicographically least witness.

    ``fix_first`` skips the subtree starting with 1; by complement symmetry
    this leaves l(k) and the witness unchanged but halves the work.
    """
    s = Search(k, depth_cap, engine=engine, fix_first=fix_first)
    return s.run(
        workers=worker_count,
        split_depth=split_depth,
        checkpoint_path=checkpoint_path,
        checkpoint_every=checkpoint_every,
        should_stop=should_stop,
    )


def resume_search(
    cp: Union[Checkpoint, str, os.PathLike],
    worker_count: int = 1,
    **kwargs,
) -> SearchOutcome:
    """Finish a search from a checkpoint (object or file name)."""
    if not isinstance(cp, Checkpoint):
        cp = Checkpoint.load(cp)
    engine = kwargs.pop("engine", "numba")
    fix_first = kwargs.pop("fix_first", False)
    s = Search.from_checkpoint(cp, engine=engine, fix_first=fix_first)
    return s.run(workers=worker_count, **kwargs)


@dataclass(frozen=True)
class TableCheck:
    k: int
    expected_l: int
    expected_witness: BinaryWord
    outcome: SearchOutcome

    @property
    def matches(self) -> bool:
        return (
            self.outcome.exhausted
            and self.outcome.l_of_k == self.expected_l
            and self.outcome.witness == self.expected_witness
        )


def verify_table(max_k: int, **search_kwargs) -> list[TableCheck]:
    """Search k = 1..max_k and compare each result with the known table."""
    if not 1 <= max_k <= 10:
        raise ValueError("max_k must lie in 1..10")
    checks = []
    for k in range(1, max_k + 1):
        row = known_exact(k)
        checks.append(TableCheck(k, row.length, row.witness, search_l(k, **search_kwargs)))
    return checks
