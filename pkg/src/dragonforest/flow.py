"""Integer max-flow (Dinic) used by the density and connectivity code."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int) -> None:
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int, rev_cap: int = 0) -> int:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(rev_cap)
        return len(self.to) - 2

    def _bfs(self, s: int, t: int) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                if self.cap[a] > 0 and level[self.to[a]] < 0:
                    level[self.to[a]] = level[x] + 1
                    queue.append(self.to[a])
        return level

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        total = 0
        while limit is None or total < limit:
            level = self._bfs(s, t)
            if level[t] < 0:
                break
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, level, it, None if limit is None else limit - total)
                if not pushed:
                    break
                total += pushed
        return total

    def _dfs(self, s: int, t: int, level: list[int], it: list[int], bound: int | None) -> int:
        # iterative augmenting-path search in the level graph
        stack = [s]
        arcs: list[int] = []
        while stack:
            x = stack[-1]
            if x == t:
                f = min(self.cap[a] for a in arcs)
                if bound is not None:
                    f = min(f, bound)
                for a in arcs:
                    self.cap[a] -= f
                    self.cap[a ^ 1] += f
                return f
            while it[x] < len(self.head[x]):
                a = self.head[x][it[x]]
                if self.cap[a] > 0 and level[self.to[a]] == level[x] + 1:
                    stack.append(self.to[a])
                    arcs.append(a)
                    break
                it[x] += 1
            else:
                # dead end: retire x and advance the parent's arc pointer
                level[x] = -1
                stack.pop()
                if arcs:
                    arcs.pop()
                    it[stack[-1]] += 1
        return 0

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen
