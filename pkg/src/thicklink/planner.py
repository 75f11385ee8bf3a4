"""The subdivision search loop.

Three phases: refine the start box until FREE, refine the goal box until
FREE, then split queue candidates until the union-find structure joins the
two FREE boxes (PATH) or the queue empties (NO-PATH, a definitive answer).

The X-boxes over one translational rect share all translational-phase
work (the far-field and stuck tests ignore the angles), so the planner
keeps a single translational quadtree whose leaves carry the rotational
parts: the initial torus split while MIXED, materialized FREE X-boxes
once the leaf resolves.  A leaf wider than epsilon splits into four;
at width <= epsilon it takes the single obstacle-driven rotational split
and becomes terminal.
"""

from __future__ import annotations

import heapq
import math
import time
from collections import deque
from dataclasses import dataclass, field

from .classify import FeatureSet, classify_bt, feature_set, link_zones
from .cspace import (
    FREE,
    FULL,
    MIXED,
    STUCK,
    Config,
    IdGen,
    RobotSpec,
    XBox,
    adjacent,
    box_center_config,
    initial_torus_split,
    rotational_products,
    shared_face_config,
    tag_of,
)
from .environment import Environment
from .geometry import Rect, TWO_PI

BFS = "bfs"
GBF = "gbf"
DIST_SIZE = "dist_size"
STRATEGIES = (BFS, GBF, DIST_SIZE)

PATH = "PATH"
NO_PATH = "NO_PATH"
TIMEOUT = "TIMEOUT"

# terminal / internal states of translational nodes
T_MIXED = MIXED
T_FREE = FREE
T_STUCK = STUCK
T_SPLIT = "SPLIT"
T_RSPLIT = "RSPLIT"


class InvalidRequest(ValueError):
    pass


@dataclass
class PlanRequest:
    env: Environment
    robot: RobotSpec
    alpha: Config
    beta: Config
    epsilon: float
    b0: Rect | None = None
    strategy: str = GBF
    seed: int = 0
    timeout: float | None = None  # seconds of wall clock

    def region(self) -> Rect:
        return self.b0 if self.b0 is not None else self.env.bbox

    def validate(self) -> None:
        if self.epsilon <= 0.0:
            raise InvalidRequest("epsilon must be positive")
        if self.strategy not in STRATEGIES:
            raise InvalidRequest("unknown strategy %r" % self.strategy)
        region = self.region()
        for name, c in (("start", self.alpha), ("goal", self.beta)):
            if not region.contains_point((c.x, c.y)):
                raise InvalidRequest("%s origin outside the planning region" % name)
            if tag_of(c.theta1, c.theta2, self.robot.kappa) is None:
                raise InvalidRequest("%s configuration lies inside the diagonal band" % name)


@dataclass
class PlanStats:
    """Counts are in X-box units (translational nodes times their live
    rotational parts, plus rotational-split children)."""

    created: int = 0
    split: int = 0
    free: int = 0
    stuck: int = 0
    mixed: int = 0
    peak_queue: int = 0
    time_ms: float = 0.0

    def as_dict(self) -> dict:
        return {
            "created": self.created,
            "split": self.split,
            "free": self.free,
            "stuck": self.stuck,
            "mixed": self.mixed,
            "peak_queue": self.peak_queue,
            "time_ms": self.time_ms,
        }


@dataclass
class PlanResult:
    outcome: str
    path: list[Config] | None
    stats: PlanStats


class UnionFind:
    """Disjoint sets with path compression and union by rank."""

    def __init__(self) -> None:
        self._parent: dict[int, int] = {}
        self._rank: dict[int, int] = {}

    def make_set(self, x: int) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._rank[x] = 0

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1


@dataclass
class TNode:
    id: int
    bt: Rect
    feats: FeatureSet
    state: str = T_MIXED
    parent: "TNode | None" = None
    children: list = field(default_factory=list)
    parts: list = field(default_factory=list)  # materialized FREE XBoxes

    def width(self) -> float:
        return self.bt.width()

    def is_leaf(self) -> bool:
        return self.state != T_SPLIT


class PlanQueue:
    """Priority queue of splitting candidates with deterministic ties."""

    def __init__(self, strategy: str, goal: Config):
        self.strategy = strategy
        self.goal = goal
        self._heap: list = []

    def _priority(self, node: TNode) -> float:
        if self.strategy == BFS:
            return float(node.id)
        mx, my = node.bt.mid()
        dist = math.hypot(mx - self.goal.x, my - self.goal.y)
        if self.strategy == GBF:
            return dist
        return dist / max(node.width(), 1e-30)  # DIST_SIZE: near and large first

    def push(self, node: TNode) -> None:
        heapq.heappush(self._heap, (self._priority(node), node.id, node))

    def get_next(self) -> TNode | None:
        while self._heap:
            _, _, node = heapq.heappop(self._heap)
            if node.state == T_MIXED:
                return node
        return None

    def __len__(self) -> int:
        return len(self._heap)


def get_next(queue: PlanQueue, strategy: str | None = None):
    if strategy is not None and strategy != queue.strategy:
        raise ValueError("queue was built for strategy %r" % queue.strategy)
    return queue.get_next()


class Planner:
    def __init__(self, req: PlanRequest):
        req.validate()
        self.req = req
        self.env = req.env
        self.robot = req.robot
        self.kappa = req.robot.kappa
        self.eps = req.epsilon
        self.idgen = IdGen()
        self.stats = PlanStats()
        self.uf = UnionFind()
        self.adj: dict[int, list[XBox]] = {}
        self.queue = PlanQueue(req.strategy, req.beta)
        self._deadline = None
        self.parts0 = initial_torus_split(self.kappa)
        root_feats = FeatureSet(tuple(self.env.features()))
        self.root: TNode | None = None
        self.root = self._make_node(req.region(), root_feats, parent=None)

    # -- node lifecycle -----------------------------------------------------

    def _make_node(self, bt: Rect, parent_feats: FeatureSet, parent: TNode | None) -> TNode:
        node = TNode(self.idgen(), bt, feature_set(bt, parent_feats, self.robot), parent=parent)
        nparts = len(self.parts0)
        self.stats.created += nparts
        state = classify_bt(bt, node.feats, self.env, self.robot)
        node.state = state
        if state == T_FREE:
            self.stats.free += nparts
            self._materialize(node, list(self.parts0), rsplit=False)
        elif state == T_STUCK:
            self.stats.stuck += nparts
        else:
            self.stats.mixed += nparts
            self.queue.push(node)
            self.stats.peak_queue = max(self.stats.peak_queue, len(self.queue))
        return node

    def _materialize(self, node: TNode, products, rsplit: bool) -> None:
        """Attach FREE X-parts to a terminal leaf and wire them into the
        connectivity graph; one tree walk serves all siblings."""
        candidates = self._neighbor_parts(node.bt)
        for br, tag in products:
            box = XBox(self.idgen(), node.bt, br, tag, status=FREE, rsplit=rsplit)
            self.uf.make_set(box.id)
            mine = self.adj.setdefault(box.id, [])
            for other in candidates:
                if adjacent(box, other, self.kappa):
                    mine.append(other)
                    self.adj[other.id].append(box)
                    self.uf.union(box.id, other.id)
            node.parts.append(box)
            candidates.append(box)

    def _neighbor_parts(self, bt: Rect):
        if self.root is None:  # materializing parts of the root itself
            return []
        tol = 1e-9
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            nb = node.bt
            if (
                min(nb.x1, bt.x1) - max(nb.x0, bt.x0) < -tol
                or min(nb.y1, bt.y1) - max(nb.y0, bt.y0) < -tol
            ):
                continue
            if node.state == T_SPLIT:
                stack.extend(node.children)
            else:
                out.extend(node.parts)
        return out

    def _split(self, node: TNode) -> None:
        nparts = len(self.parts0)
        self.stats.split += nparts
        if node.width() > self.eps:
            node.state = T_SPLIT
            for quad in node.bt.quadrants():
                node.children.append(self._make_node(quad, node.feats, node))
        else:
            z1, z2 = link_zones(node.bt, node.feats, self.env, self.robot)
            node.state = T_RSPLIT
            products = []
            for br, tag in self.parts0:
                products.extend(rotational_products(br, tag, z1, z2, self.kappa))
            self._materialize(node, products, rsplit=True)
            self.stats.created += len(node.parts)
            self.stats.free += len(node.parts)

    # -- box location -------------------------------------------------------

    def _rot_contains(self, br, t1: float, t2: float) -> bool:
        for (lo, hi), th in zip(br, (t1, t2)):
            if not (lo <= th <= hi or lo <= th + TWO_PI <= hi):
                return False
        return True

    def _containing_leaf(self, p) -> TNode | None:
        best: TNode | None = None
        stack = [self.root]
        while stack:
            node = stack.pop()
            if not node.bt.contains_point(p):
                continue
            if node.state == T_SPLIT:
                stack.extend(node.children)
            elif best is None or node.id < best.id:
                best = node
        return best

    def locate(self, c: Config):
        """(kind, payload): ("free", XBox) | ("node", TNode) | ("dead", None)."""
        leaf = self._containing_leaf((c.x, c.y))
        if leaf is None or leaf.state == T_STUCK:
            return ("dead", None)
        if leaf.state == T_MIXED:
            return ("node", leaf)
        tag = tag_of(c.theta1, c.theta2, self.kappa)
        for part in leaf.parts:
            if part.tag in (tag, FULL) and self._rot_contains(part.br, c.theta1, c.theta2):
                return ("free", part)
        return ("dead", None)

    # -- main loops ---------------------------------------------------------

    def _timed_out(self) -> bool:
        return self._deadline is not None and time.monotonic() > self._deadline

    def _refine_endpoint(self, c: Config):
        while True:
            if self._timed_out():
                return TIMEOUT
            kind, payload = self.locate(c)
            if kind == "free":
                return payload
            if kind == "dead":
                return NO_PATH
            self._split(payload)

    def plan(self) -> PlanResult:
        t0 = time.monotonic()
        if self.req.timeout is not None:
            self._deadline = t0 + self.req.timeout
        path: list[Config] | None = None
        box_a = self._refine_endpoint(self.req.alpha)
        if isinstance(box_a, str):
            outcome = box_a
        else:
            box_b = self._refine_endpoint(self.req.beta)
            if isinstance(box_b, str):
                outcome = box_b
            else:
                outcome = self._main_loop(box_a, box_b)
                if outcome == PATH:
                    path = extract_path(self.adj, box_a, box_b, self.req, self.kappa)
        self.stats.time_ms = (time.monotonic() - t0) * 1000.0
        return PlanResult(outcome, path, self.stats)

    def _main_loop(self, box_a: XBox, box_b: XBox) -> str:
        while self.uf.find(box_a.id) != self.uf.find(box_b.id):
            if self._timed_out():
                return TIMEOUT
            node = self.queue.get_next()
            if node is None:
                return NO_PATH
            self._split(node)
        return PATH


def extract_path(
    adj: dict[int, list[XBox]],
    box_a: XBox,
    box_b: XBox,
    req: PlanRequest,
    kappa: float,
) -> list[Config]:
    """Breadth-first channel through the FREE-box graph, then stitch
    start, shared-face midpoints, box centers, and goal."""
    prev: dict[int, XBox | None] = {box_a.id: None}
    dq = deque([box_a])
    while dq:
        cur = dq.popleft()
        if cur.id == box_b.id:
            break
        for nxt in sorted(adj.get(cur.id, ()), key=lambda b: b.id):
            if nxt.id not in prev:
                prev[nxt.id] = cur
                dq.append(nxt)
    if box_b.id not in prev:
        raise RuntimeError("union-find and graph disagree on connectivity")
    chain: list[XBox] = []
    cur: XBox | None = box_b
    while cur is not None:
        chain.append(cur)
        cur = prev[cur.id]
    chain.reverse()
    path = [req.alpha]
    if len(chain) == 1:
        path.append(box_center_config(chain[0], kappa))
    else:
        for i in range(len(chain) - 1):
            path.append(shared_face_config(chain[i], chain[i + 1], kappa))
            if i + 1 < len(chain) - 1:
                path.append(box_center_config(chain[i + 1], kappa))
    path.append(req.beta)
    return path


def plan(req: PlanRequest) -> PlanResult:
    """Run the subdivision search for one request."""
    return Planner(req).plan()
