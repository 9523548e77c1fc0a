"""Block-quantized weighted graph over traversable regions.

The mask is tiled into non-overlapping b x b blocks (clipped at the
image border); every block holding at least one traversable pixel
becomes a node at the block's geometric center. Nodes within
``max_distance`` of each other are connected, with the edge cost scaled
up through sparse blocks:

    weight = center_distance * (1 + penalty * ((1 - rho_i) + (1 - rho_j)))

where rho is the block's traversable-pixel density.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    Coordinate,
    EmptyGraphError,
    InvalidNodeError,
    NoPathError,
    PipelineConfig,
    TraversabilityMask,
)


@dataclass(frozen=True)
class GraphNode:
    block_col: int
    block_row: int
    center: Coordinate
    density: float

    def __post_init__(self):
        if not (0.0 < self.density <= 1.0):
            raise ValueError(f"node density must be in (0, 1], got {self.density}")


@dataclass(frozen=True)
class GraphEdge:
    node_a: int
    node_b: int
    weight: float

    def __post_init__(self):
        if self.node_a == self.node_b:
            raise ValueError("self edges are not allowed")
        if self.weight <= 0:
            raise ValueError("edge weight must be > 0")


@dataclass(frozen=True, eq=False)
class PixelGraph:
    """Immutable graph; adjacency lists are per-node (neighbor, weight) pairs
    sorted by neighbor id."""

    nodes: tuple[GraphNode, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...]
    mask_width: int
    mask_height: int
    block_size: int
    max_distance: float
    density_penalty: float

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def edges(self):
        """Yield each undirected edge once, (a, b, weight) with a < b."""
        for a, neighbors in enumerate(self.adjacency):
            for b, w in neighbors:
                if a < b:
                    yield GraphEdge(a, b, w)


def edge_weight(
    center_a: Coordinate, center_b: Coordinate, density_a: float, density_b: float, penalty: float
) -> float:
    dist = center_a.distance_to(center_b)
    return dist * (1.0 + penalty * ((1.0 - density_a) + (1.0 - density_b)))


def build_graph(mask: TraversabilityMask, config: PipelineConfig) -> PixelGraph:
    """Quantize a mask into the weighted block graph.

    Border blocks use their clipped extent for both the center and the
    density denominator. Raises EmptyGraphError on an all-zero mask.
    """
    b = config.block_size
    w, h = mask.width, mask.height
    counts = kernels.block_counts(mask.bits, b)
    rows, cols = counts.shape

    node_ids = np.full((rows, cols), -1, dtype=np.int64)
    nodes: list[GraphNode] = []
    for br in range(rows):
        for bc in range(cols):
            cnt = int(counts[br, bc])
            if cnt == 0:
                continue
            bw = min(b, w - bc * b)
            bh = min(b, h - br * b)
            center = Coordinate(x=bc * b + bw / 2.0, y=br * b + bh / 2.0)
            node_ids[br, bc] = len(nodes)
            nodes.append(
                GraphNode(block_col=bc, block_row=br, center=center, density=cnt / (bw * bh))
            )
    if not nodes:
        raise EmptyGraphError("mask has no traversable pixels")

    # clipped centers shift at most b/2 inward, so this window is safe
    reach = int(math.ceil(config.max_distance / b)) + 1
    adjacency: list[list[tuple[int, float]]] = [[] for _ in nodes]
    for i, node in enumerate(nodes):
        br, bc = node.block_row, node.block_col
        for dr in range(-reach, reach + 1):
            nr = br + dr
            if not (0 <= nr < rows):
                continue
            for dc in range(-reach, reach + 1):
                nc = bc + dc
                if not (0 <= nc < cols):
                    continue
                j = int(node_ids[nr, nc])
                if j <= i:
                    continue
                other = nodes[j]
                dist = node.center.distance_to(other.center)
                if 0.0 < dist <= config.max_distance:
                    wgt = edge_weight(
                        node.center, other.center, node.density, other.density,
                        config.density_penalty,
                    )
                    adjacency[i].append((j, wgt))
                    adjacency[j].append((i, wgt))

    return PixelGraph(
        nodes=tuple(nodes),
        adjacency=tuple(tuple(sorted(neigh)) for neigh in adjacency),
        mask_width=w,
        mask_height=h,
        block_size=b,
        max_distance=config.max_distance,
        density_penalty=config.density_penalty,
    )


def _check_id(graph: PixelGraph, node_id: int) -> None:
    if not (0 <= node_id < graph.node_count):
        raise InvalidNodeError(f"node id {node_id} outside graph of {graph.node_count} nodes")


def shortest_path(graph: PixelGraph, from_id: int, to_id: int) -> tuple[list[int], float]:
    """Dijkstra with deterministic (cost, node-id) heap ordering.

    Returns the node-id sequence and its total weight. Raises
    NoPathError when the target is unreachable (distinct from the
    InvalidNodeError raised for out-of-range ids).
    """
    _check_id(graph, from_id)
    _check_id(graph, to_id)
    if from_id == to_id:
        return [from_id], 0.0

    dist: dict[int, float] = {from_id: 0.0}
    prev: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple[float, int]] = [(0.0, from_id)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        if u == to_id:
            path = [u]
            while path[-1] != from_id:
                path.append(prev[path[-1]])
            path.reverse()
            return path, d
        done.add(u)
        for v, w in graph.adjacency[u]:
            if v in done:
                continue
            nd = d + w
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    raise NoPathError(f"no route from node {from_id} to node {to_id}")


def nearest_node(graph: PixelGraph, point: Coordinate) -> int:
    """Node whose center is closest to ``point``; ties go to the smaller id."""
    if graph.node_count == 0:
        raise EmptyGraphError("graph has no nodes")
    centers = np.array([(n.center.x, n.center.y) for n in graph.nodes], dtype=np.float64)
    d2 = (centers[:, 0] - point.x) ** 2 + (centers[:, 1] - point.y) ** 2
    return int(np.argmin(d2))


def connected_components(graph: PixelGraph) -> list[int]:
    """Component label per node, labels assigned in node-id order."""
    labels = [-1] * graph.node_count
    current = 0
    for start in range(graph.node_count):
        if labels[start] != -1:
            continue
        stack = [start]
        labels[start] = current
        while stack:
            u = stack.pop()
            for v, _ in graph.adjacency[u]:
                if labels[v] == -1:
                    labels[v] = current
                    stack.append(v)
        current += 1
    return labels
