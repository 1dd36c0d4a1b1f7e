"""
Graph families for coined walks.

A :class:`WalkGraph` stores, for every vertex ``v`` and port ``a`` (a coin
basis label), the neighbour reached through that port, the port at the
neighbour that leads back, and the port the amplitude occupies on arrival.
The shift moves amplitude ``(a, v) -> (arrival[v, a], neighbors[v, a])``.

Regular graphs use the "moving" convention (the label is a direction and is
kept by the shift); the glued trees use flip-flop (arrival is the return
port). Vertices of lower degree than ``coin_dim`` carry padding ports that
are never populated; the shift maps them to themselves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "GraphError",
    "BoundaryMode",
    "WalkGraph",
    "make_cycle",
    "make_line",
    "make_lattice2d",
    "make_open_lattice",
    "make_glued_trees",
    "make_hypercube",
    "LATTICE_PORTS",
    "LINE_PORTS",
]

LINE_PORTS = ("R", "L")
LATTICE_PORTS = ("LD", "LU", "RD", "RU")
_LATTICE_MOVES = ((-1, -1), (-1, 1), (1, -1), (1, 1))


class GraphError(ValueError):
    pass


class BoundaryMode(str, enum.Enum):
    """
    Edge identification for a W x H lattice section.

    OPEN is a light-cone window: edges wrap internally, which is exact while
    the walk has not reached them. MOEBIUS twists the x seam and leaves y as
    an open window; KLEIN twists the x seam and joins y directly; PROJECTIVE
    twists both seams.
    """

    OPEN = "open"
    TORUS = "torus"
    MOEBIUS = "moebius"
    KLEIN = "klein"
    PROJECTIVE = "projective"

    @property
    def twists(self) -> tuple[bool, bool]:
        return {
            BoundaryMode.OPEN: (False, False),
            BoundaryMode.TORUS: (False, False),
            BoundaryMode.MOEBIUS: (True, False),
            BoundaryMode.KLEIN: (True, False),
            BoundaryMode.PROJECTIVE: (True, True),
        }[self]


@dataclass(frozen=True, eq=False)
class WalkGraph:
    kind: str
    params: dict
    degree: NDArray[np.int64]
    neighbors: NDArray[np.int64]
    return_port: NDArray[np.int64]
    arrival: NDArray[np.int64]
    origin: int = 0
    convention: str = "moving"
    coords: NDArray[np.int64] | None = None
    columns: NDArray[np.int64] | None = None
    port_names: tuple[str, ...] | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("degree", "neighbors", "return_port", "arrival", "coords", "columns"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.array(arr, dtype=np.int64)
                arr.setflags(write=False)
                object.__setattr__(self, name, arr)
        self._validate()

    @property
    def num_vertices(self) -> int:
        return self.neighbors.shape[0]

    @property
    def coin_dim(self) -> int:
        return self.neighbors.shape[1]

    @property
    def is_regular(self) -> bool:
        return bool(np.all(self.degree == self.coin_dim))

    @property
    def port_mask(self) -> NDArray[np.bool_]:
        """Boolean ``(coin_dim, V)`` array of real (non-padding) ports."""
        return np.arange(self.coin_dim)[:, None] < self.degree[None, :]

    @cached_property
    def shift_target(self) -> NDArray[np.int64]:
        """Flat destination index of every source slot ``a * V + v``."""
        d, n = self.coin_dim, self.num_vertices
        src = np.arange(d * n)
        a, v = np.divmod(src, n)
        valid = self.port_mask.ravel()
        tgt = src.copy()
        tgt[valid] = self.arrival[v[valid], a[valid]] * n + self.neighbors[v[valid], a[valid]]
        tgt.setflags(write=False)
        return tgt

    @cached_property
    def shift_source(self) -> NDArray[np.int64]:
        """Inverse of :attr:`shift_target`."""
        inv = np.empty_like(self.shift_target)
        inv[self.shift_target] = np.arange(self.shift_target.size)
        inv.setflags(write=False)
        return inv

    def _validate(self) -> None:
        d, n = self.coin_dim, self.num_vertices
        if self.degree.shape != (n,) or self.return_port.shape != (n, d) or self.arrival.shape != (n, d):
            raise GraphError("inconsistent port table shapes")
        mask = self.port_mask.T
        nb = self.neighbors[mask]
        if np.any(nb < 0) or np.any(nb >= n):
            raise GraphError("port leads outside the vertex set")
        tgt = self.shift_target
        if np.unique(tgt).size != tgt.size:
            raise GraphError(f"{self.kind}: shift is not a bijection on (vertex, port) pairs")
        parts = np.divmod(tgt[self.port_mask.ravel()], n)
        if np.any(parts[0] >= self.degree[parts[1]]):
            raise GraphError(f"{self.kind}: shift lands on a padding port")
        if not 0 <= self.origin < n:
            raise GraphError("origin vertex out of range")

    def to_json(self) -> dict:
        """Description with vertices, ports ``(neighbour, return port)`` and labels."""
        verts = []
        for v in range(self.num_vertices):
            entry = {
                "id": v,
                "degree": int(self.degree[v]),
                "ports": [
                    [int(self.neighbors[v, a]), int(self.return_port[v, a])]
                    for a in range(int(self.degree[v]))
                ],
                "arrival": [int(self.arrival[v, a]) for a in range(int(self.degree[v]))],
            }
            if self.coords is not None:
                entry["coord"] = np.atleast_1d(self.coords[v]).tolist()
            if self.columns is not None:
                entry["column"] = int(self.columns[v])
            verts.append(entry)
        return {
            "kind": self.kind,
            "params": {k: (v.value if isinstance(v, enum.Enum) else v) for k, v in self.params.items()},
            "convention": self.convention,
            "origin": self.origin,
            "port_names": list(self.port_names) if self.port_names else None,
            "vertices": verts,
        }


def _check_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < minimum:
        raise GraphError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def _ring(n: int, origin: int, kind: str, params: dict) -> WalkGraph:
    x = np.arange(n)
    neighbors = np.stack([(x + 1) % n, (x - 1) % n], axis=1)
    arrival = np.tile([0, 1], (n, 1))
    coords = x - origin
    if kind == "cycle":
        coords = np.where(coords > n // 2, coords - n, coords)
    return WalkGraph(
        kind=kind,
        params=params,
        degree=np.full(n, 2),
        neighbors=neighbors,
        return_port=1 - arrival,
        arrival=arrival,
        origin=origin,
        coords=coords,
        port_names=LINE_PORTS,
    )


def make_cycle(N: int) -> WalkGraph:
    """N-cycle; port R moves ``x -> x + 1 (mod N)``, port L ``x -> x - 1``."""
    N = _check_int("N", N, 2)
    return _ring(N, 0, "cycle", {"N": N})


def make_line(steps: int) -> WalkGraph:
    """
    Window of ``2 * steps + 3`` sites standing in for the infinite line.

    The origin sits at the centre, and coordinates run from ``-(steps+1)`` to
    ``steps+1``; a walk of at most ``steps`` steps never reaches the seam.
    """
    steps = _check_int("steps", steps, 0)
    n = 2 * steps + 3
    return _ring(n, n // 2, "line", {"steps": steps, "window": n})


def make_lattice2d(W: int, H: int, boundary: BoundaryMode | str = BoundaryMode.OPEN) -> WalkGraph:
    """
    Square lattice section with diagonal moves in the ``(L, R) x (D, U)`` basis.

    Port ``LD`` moves ``(x, y) -> (x-1, y-1)``, and similarly for the others.
    A twisted x seam identifies ``(W, y)`` with ``(0, H-1-y)``; crossing it
    reflects the vertical direction, so the arriving label has D and U
    swapped. A twisted y seam likewise reflects x and swaps L and R.

    Vertex ``v = x * H + y``. For OPEN boundaries the origin is the centre;
    otherwise it is ``(0, 0)``.
    """
    boundary = BoundaryMode(boundary)
    W = _check_int("W", W, 2)
    H = _check_int("H", H, 2)
    twist_x, twist_y = boundary.twists
    n = W * H
    xs, ys = np.divmod(np.arange(n), H)
    neighbors = np.empty((n, 4), dtype=np.int64)
    arrival = np.empty((n, 4), dtype=np.int64)
    for a, (dx, dy) in enumerate(_LATTICE_MOVES):
        nx, ny = xs + dx, ys + dy
        lab = np.full(n, a)
        cross_x = (nx < 0) | (nx >= W)
        nx = nx % W
        if twist_x:
            ny = np.where(cross_x, H - 1 - ny, ny)
            lab = np.where(cross_x, lab ^ 1, lab)
        cross_y = (ny < 0) | (ny >= H)
        ny = ny % H
        if twist_y:
            nx = np.where(cross_y, W - 1 - nx, nx)
            lab = np.where(cross_y, lab ^ 2, lab)
        neighbors[:, a] = nx * H + ny
        arrival[:, a] = lab
    # the port leading back is the opposite move of the arrival label
    return_port = 3 - arrival
    if boundary is BoundaryMode.OPEN:
        cx, cy = W // 2, H // 2
    else:
        cx, cy = 0, 0
    try:
        return WalkGraph(
            kind="lattice2d",
            params={"W": W, "H": H, "boundary": boundary},
            degree=np.full(n, 4),
            neighbors=neighbors,
            return_port=return_port,
            arrival=arrival,
            origin=int(cx * H + cy),
            coords=np.stack([xs - cx, ys - cy], axis=1),
            port_names=LATTICE_PORTS,
        )
    except GraphError as exc:
        raise GraphError(
            f"{boundary.value} identification of a {W}x{H} section is not consistent: {exc}"
        ) from exc


def make_open_lattice(steps: int) -> WalkGraph:
    """Square window of side ``2 * steps + 3`` centred on the origin."""
    side = 2 * _check_int("steps", steps, 0) + 3
    return make_lattice2d(side, side, BoundaryMode.OPEN)


def _random_leaf_cycle(m: int, rng: np.random.Generator) -> tuple[NDArray, NDArray]:
    """
    Two cross-edges per leaf: a single random cycle alternating sides.

    Returns ``(left_leaf, right_leaf)`` arrays of the ``2 m`` edges.
    """
    left = rng.permutation(m)
    right = rng.permutation(m)
    a = np.concatenate([left, left])
    b = np.concatenate([right, np.roll(right, 1)])
    return a, b


def make_glued_trees(N: int, seed: int | np.random.Generator | None = 0) -> WalkGraph:
    """
    Two binary trees of depth N whose leaves are joined by a random cycle.

    Every leaf receives exactly two cross-edges and no double edges (for
    ``N = 1`` the two leaves on each side are joined completely). Columns run
    from 0 (entrance root) to ``2N + 1`` (exit root). Ports are ordered
    ``(parent, child, child)`` for tree vertices, ``(parent, cross, cross)``
    for leaves and ``(child, child)`` at the two roots; the shift is
    flip-flop.
    """
    N = _check_int("N", N, 1)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    per_tree = 2 ** (N + 1) - 1
    m = 2**N
    n = 2 * per_tree
    adj: list[list[int]] = [[] for _ in range(n)]
    columns = np.empty(n, dtype=np.int64)
    for side, offset in ((0, 0), (1, per_tree)):
        for i in range(per_tree):
            depth = int(np.floor(np.log2(i + 1)))
            columns[offset + i] = depth if side == 0 else 2 * N + 1 - depth
            if i > 0:
                adj[offset + i].append(offset + (i - 1) // 2)
        for i in range(per_tree):
            for c in (2 * i + 1, 2 * i + 2):
                if c < per_tree:
                    adj[offset + i].append(offset + c)
    leaf0 = per_tree - m
    la, rb = _random_leaf_cycle(m, rng)
    for i, j in zip(la, rb):
        u, w = leaf0 + int(i), per_tree + leaf0 + int(j)
        adj[u].append(w)
        adj[w].append(u)
    degree = np.array([len(p) for p in adj])
    neighbors = np.zeros((n, 3), dtype=np.int64)
    return_port = np.zeros((n, 3), dtype=np.int64)
    for v, ports in enumerate(adj):
        neighbors[v, : len(ports)] = ports
    for v, ports in enumerate(adj):
        for a, w in enumerate(ports):
            return_port[v, a] = adj[w].index(v)
    return WalkGraph(
        kind="glued_trees",
        params={"N": N},
        degree=degree,
        neighbors=neighbors,
        return_port=return_port,
        arrival=return_port.copy(),
        origin=0,
        convention="flip-flop",
        columns=columns,
        extra={"exit": per_tree},
    )


def make_hypercube(n: int) -> WalkGraph:
    """``n``-cube on bit strings; port ``i`` flips bit ``i``."""
    n = _check_int("n", n, 1)
    v = np.arange(2**n)
    ports = np.arange(n)
    neighbors = v[:, None] ^ (1 << ports)[None, :]
    arrival = np.tile(ports, (2**n, 1))
    return WalkGraph(
        kind="hypercube",
        params={"n": n},
        degree=np.full(2**n, n),
        neighbors=neighbors,
        return_port=arrival,
        arrival=arrival,
        origin=0,
        coords=np.array([bin(int(x)).count("1") for x in v]),
    )
