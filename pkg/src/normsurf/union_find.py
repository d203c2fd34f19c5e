"""Disjoint-set structure used for orbit and component computations."""

from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    """Union-find over arbitrary hashable items with path compression."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {}
        for item in items:
            self.add(item)

    def add(self, item) -> None:
        if item not in self._parent:
            self._parent[item] = item

    def find(self, item):
        self.add(item)
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[rb] = ra

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    def groups(self) -> dict:
        """Map each root to the sorted list of its members."""
        out: dict = {}
        for item in self._parent:
            out.setdefault(self.find(item), []).append(item)
        for members in out.values():
            members.sort()
        return out
