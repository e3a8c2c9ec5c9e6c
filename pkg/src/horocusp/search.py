"""Branch-and-prune driver over the normalized parameter box.

The driver subdivides the feasible box dyadically, scans each box against a
canonical word stream with the killer test, and assembles a leaf cover with
per-box verdicts plus an aggregate covolume bound.  Reports serialize to
canonical JSON and are byte-identical for any worker count on complete runs.
"""

import json
import logging
import random
import threading
import time
import zlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .bicuspid import Feasibility, ParamBox, Params, box_in_param_space, param_space
from .interval import RealInterval
from .words import (
    Word,
    enumerate_words,
    evaluate_word_float,
    lower_left_abs,
    parse_word,
    volume_bound,
)

log = logging.getLogger(__name__)

AUDIT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and limits for one search run.

    max_boxes bounds the number of boxes tested (0 for unlimited); when the
    limit trips, untested boxes become undecided leaves and the report is
    flagged incomplete.  root_box overrides the feasible box, as six
    [lo, hi] coordinate bounds or a ParamBox.  worker_count never affects
    report bytes on complete runs.
    """

    area_bound: float
    max_d: int
    max_exp: int
    max_depth: int
    min_box_width: float
    word_budget_per_box: int
    worker_count: int = 1
    max_boxes: int = 0
    use_parent_word_hint: bool = True
    root_box: Optional[object] = None

    def __post_init__(self):
        if not (self.area_bound > 0.0 and self.area_bound == self.area_bound):
            raise ValueError("area_bound must be positive and finite")
        if self.max_d < 1:
            raise ValueError("max_d must be at least 1")
        if self.max_exp < 1:
            raise ValueError("max_exp must be at least 1")
        if not 1 <= self.max_depth <= 64:
            raise ValueError("max_depth must lie in [1, 64]")
        if not self.min_box_width > 0.0:
            raise ValueError("min_box_width must be positive")
        if self.word_budget_per_box < 1:
            raise ValueError("word_budget_per_box must be at least 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if self.max_boxes < 0:
            raise ValueError("max_boxes must be nonnegative")

    def resolved_root(self) -> Optional[ParamBox]:
        if self.root_box is None:
            return param_space(self.area_bound)
        if isinstance(self.root_box, ParamBox):
            return self.root_box
        return ParamBox.from_bounds(self.root_box)

    def to_json_dict(self) -> dict:
        root = None
        if self.root_box is not None:
            box = self.resolved_root()
            root = box.to_bounds()
        return {
            "area_bound": self.area_bound,
            "max_d": self.max_d,
            "max_exp": self.max_exp,
            "max_depth": self.max_depth,
            "min_box_width": self.min_box_width,
            "word_budget_per_box": self.word_budget_per_box,
            "max_boxes": self.max_boxes,
            "use_parent_word_hint": self.use_parent_word_hint,
            "root_box": root,
        }


class BoxStatus(Enum):
    ELIMINATED_INFEASIBLE = "eliminated_infeasible"
    ELIMINATED_KILLER = "eliminated_killer"
    CANDIDATE = "candidate"
    UNDECIDED = "undecided"


@dataclass
class BoxVerdict:
    """Outcome of testing one box.

    word is the eliminating word or the canonical-least candidate word.
    near_miss is the scanned word with the smallest upper bound on the
    lower-left entry; it seeds the children's scans and is never serialized.
    """

    box: ParamBox
    status: BoxStatus
    word: Optional[Word] = None
    volume_bound: Optional[float] = None
    words_scanned: int = 0
    near_miss: Optional[Word] = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        d = {
            "path": self.box.path,
            "bounds": self.box.to_bounds(),
            "status": self.status.value,
        }
        if self.word is not None:
            d["word"] = str(self.word)
        if self.volume_bound is not None:
            d["volume_bound"] = self.volume_bound
        return d


@dataclass
class SearchReport:
    """Leaf cover of the feasible box with the aggregate covolume bound.

    global_volume_bound is the max candidate bound, the string "unbounded"
    when undecided leaves remain, or the string "-inf" when nothing is left
    to bound.  wall_time is informational and excluded from serialization.
    """

    config: SearchConfig
    leaves: List[BoxVerdict]
    global_volume_bound: Union[float, str]
    boxes_tested: int
    words_evaluated: int
    incomplete: bool = False
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "version": "0.1.0",
            "config": self.config.to_json_dict(),
            "leaves": [leaf.to_json_dict() for leaf in self.leaves],
            "global_volume_bound": self.global_volume_bound,
            "statistics": {
                "boxes_tested": self.boxes_tested,
                "words_evaluated": self.words_evaluated,
            },
            "incomplete": self.incomplete,
        }

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def subdivide(box: ParamBox) -> Tuple[ParamBox, ParamBox]:
    """Bisect the widest coordinate at its midpoint.

    Width ties resolve to the earliest coordinate in (a_re, a_im, b_re,
    b_im, c_re, c_im).  Children extend the parent path with "0" and "1".
    """
    widths = box.widths()
    top = max(widths)
    if top <= 0.0:
        raise ValueError("cannot subdivide a zero-volume box")
    axis = widths.index(top)
    coords = list(box.coords())
    iv = coords[axis]
    mid = iv.midpoint()
    lo_coords = list(coords)
    hi_coords = list(coords)
    lo_coords[axis] = RealInterval(iv.lo, mid)
    hi_coords[axis] = RealInterval(mid, iv.hi)
    return (
        ParamBox(*lo_coords, box.path + "0"),
        ParamBox(*hi_coords, box.path + "1"),
    )


def test_box(
    box: ParamBox,
    words: Optional[Iterable[Word]],
    cfg: SearchConfig,
    *,
    hint: Optional[Word] = None,
) -> BoxVerdict:
    """Scan one box against the word stream.

    Returns EliminatedInfeasible if the box misses the feasible region, the
    first eliminating word otherwise, else the canonically least candidate
    word, else Undecided.  At most cfg.word_budget_per_box words are
    scanned and the hint word is scanned first.
    """
    if box_in_param_space(box, cfg.area_bound) is Feasibility.OUTSIDE:
        return BoxVerdict(box, BoxStatus.ELIMINATED_INFEASIBLE)

    budget = cfg.word_budget_per_box
    scanned = 0
    candidate: Optional[Tuple[tuple, Word]] = None
    near: Optional[Tuple[float, tuple, Word]] = None

    def scan(w: Word) -> Optional[BoxVerdict]:
        nonlocal scanned, candidate, near
        if w.z_count < 1:
            raise ValueError(f"word stream produced a power-free word: {w}")
        bounds = lower_left_abs(w, box)
        scanned += 1
        if bounds.hi < 1.0:
            if bounds.lo > 0.0:
                return BoxVerdict(box, BoxStatus.ELIMINATED_KILLER, w, None, scanned)
            key = w.sort_key()
            if candidate is None or key < candidate[0]:
                candidate = (key, w)
        elif bounds.lo < 1.0:
            # lo >= 1 means no sub-box can ever be eliminated by this word
            entry = (bounds.hi, w.sort_key(), w)
            if near is None or entry[:2] < near[:2]:
                near = entry
        return None

    if hint is not None:
        verdict = scan(hint)
        if verdict is not None:
            return verdict
    stream = iter(words) if words is not None else enumerate_words(cfg.max_d, cfg.max_exp)
    for w in stream:
        if scanned >= budget:
            break
        if hint is not None and w == hint:
            continue
        verdict = scan(w)
        if verdict is not None:
            return verdict

    if candidate is not None:
        word = candidate[1]
        return BoxVerdict(box, BoxStatus.CANDIDATE, word, volume_bound(word), scanned)
    miss = near[2] if near is not None else None
    return BoxVerdict(box, BoxStatus.UNDECIDED, None, None, scanned, miss)


# keep pytest from collecting the operation as a test case
test_box.__test__ = False


class _WordPool:
    """Thread-safe shared prefix of the canonical word stream."""

    def __init__(self, max_d: int, max_exp: int):
        self._gen = enumerate_words(max_d, max_exp)
        self._cache: List[Word] = []
        self._done = False
        self._lock = threading.Lock()

    def _get(self, i: int) -> Optional[Word]:
        while True:
            with self._lock:
                if i < len(self._cache):
                    return self._cache[i]
                if self._done:
                    return None
                try:
                    w = next(self._gen)
                except StopIteration:
                    self._done = True
                    return None
                self._cache.append(w)

    def stream(self):
        i = 0
        while True:
            w = self._get(i)
            if w is None:
                return
            yield w
            i += 1


def aggregate_volume_bound(leaves: Iterable[BoxVerdict]) -> Union[float, str]:
    """Covolume aggregate over a leaf cover, with sentinel strings."""
    bounds = []
    for leaf in leaves:
        if leaf.status is BoxStatus.UNDECIDED:
            return "unbounded"
        if leaf.status is BoxStatus.CANDIDATE:
            bounds.append(leaf.volume_bound)
    return max(bounds) if bounds else "-inf"


def run_search(cfg: SearchConfig) -> SearchReport:
    """Explore the feasible box depth-first and return the leaf cover.

    Undecided boxes wider than cfg.min_box_width and shallower than
    cfg.max_depth are subdivided; other undecided boxes become leaves.
    Complete runs serialize identically for every worker_count.
    """
    start = time.perf_counter()
    root = cfg.resolved_root()
    if root is None:
        report = SearchReport(cfg, [], "-inf", 0, 0, False, time.perf_counter() - start)
        log.info("search finished: empty feasible region")
        return report

    pool = _WordPool(cfg.max_d, cfg.max_exp)
    results: Dict[str, BoxVerdict] = {}
    stack: List[Tuple[ParamBox, Optional[Word]]] = [(root, None)]
    cond = threading.Condition()
    state = {"active": 0, "boxes": 0, "words": 0, "exhausted": False}

    def worker() -> None:
        while True:
            with cond:
                while not stack and state["active"] > 0:
                    cond.wait()
                if not stack:
                    cond.notify_all()
                    return
                box, hint = stack.pop()
                if state["exhausted"] or (
                    cfg.max_boxes and state["boxes"] >= cfg.max_boxes
                ):
                    state["exhausted"] = True
                    results[box.path] = BoxVerdict(box, BoxStatus.UNDECIDED)
                    cond.notify_all()
                    continue
                state["boxes"] += 1
                state["active"] += 1
            verdict = test_box(box, pool.stream(), cfg, hint=hint)
            with cond:
                state["active"] -= 1
                state["words"] += verdict.words_scanned
                splittable = (
                    len(box.path) < cfg.max_depth
                    and box.max_width() > cfg.min_box_width
                )
                if verdict.status is BoxStatus.UNDECIDED and splittable:
                    child_hint = verdict.near_miss if cfg.use_parent_word_hint else None
                    lo, hi = subdivide(box)
                    stack.append((hi, child_hint))
                    stack.append((lo, child_hint))
                else:
                    results[box.path] = verdict
                cond.notify_all()

    if cfg.worker_count == 1:
        worker()
    else:
        threads = [
            threading.Thread(target=worker, name=f"search-{i}")
            for i in range(cfg.worker_count)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

    leaves = [results[path] for path in sorted(results)]
    report = SearchReport(
        cfg,
        leaves,
        aggregate_volume_bound(leaves),
        state["boxes"],
        state["words"],
        state["exhausted"],
        time.perf_counter() - start,
    )
    log.info(
        "search finished: %d leaves, %d boxes tested, %d words evaluated, %.3fs",
        len(leaves),
        report.boxes_tested,
        report.words_evaluated,
        report.wall_time,
    )
    return report


def _leaf_rows(report) -> List[dict]:
    if isinstance(report, SearchReport):
        return [leaf.to_json_dict() for leaf in report.leaves]
    return list(report["leaves"])


def verify_report(report, samples_per_box: int) -> dict:
    """Independent float audit of every killer-eliminated leaf.

    Samples points inside each such leaf with a path-seeded generator and
    float-evaluates the recorded word, requiring the lower-left magnitude
    to stay inside (0, 1) with tolerance AUDIT_TOLERANCE.  Accepts a
    SearchReport or its JSON dictionary form.
    """
    if samples_per_box < 1:
        raise ValueError("samples_per_box must be at least 1")
    audited = 0
    taken = 0
    violations = []
    for row in _leaf_rows(report):
        if row["status"] != BoxStatus.ELIMINATED_KILLER.value:
            continue
        audited += 1
        word = parse_word(row["word"])
        rng = random.Random(zlib.crc32(("audit:" + row["path"]).encode("ascii")))
        for _ in range(samples_per_box):
            taken += 1
            vals = [lo + rng.random() * (hi - lo) for lo, hi in row["bounds"]]
            p = Params(
                complex(vals[0], vals[1]),
                complex(vals[2], vals[3]),
                complex(vals[4], vals[5]),
            )
            mag = abs(evaluate_word_float(word, p)[2])
            if mag <= AUDIT_TOLERANCE or mag >= 1.0 + AUDIT_TOLERANCE:
                violations.append(
                    {
                        "path": row["path"],
                        "word": row["word"],
                        "params": vals,
                        "abs_lower_left": mag,
                    }
                )
    return {
        "passed": not violations,
        "leaves_audited": audited,
        "samples_taken": taken,
        "violations": violations,
    }
