class DisjointSet:
    """
    Union-find over hashable items, with union by rank and path compression.

    Items are added lazily by :meth:`find`.

        >>> ds = DisjointSet()
        >>> ds.union(1, 2)
        >>> ds.find(1) == ds.find(2)
        True
        >>> ds.find(3) == ds.find(1)
        False

    """

    def __init__(self, items=()):
        self._parent = {}
        self._rank = {}
        for item in items:
            self.add(item)

    def __contains__(self, item):
        return item in self._parent

    def __len__(self):
        return len(self._parent)

    def __iter__(self):
        return iter(list(self._parent))

    def add(self, item):
        if item not in self._parent:
            self._parent[item] = item
            self._rank[item] = 0

    def find(self, item):
        parent = self._parent
        if item not in parent:
            self.add(item)
            return item
        root = item
        while parent[root] != root:
            root = parent[root]
        # compress the path we just walked
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    def union(self, a, b):
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1

    def groups(self, key=None):
        """
        Return the sets as a list of sorted lists.  The lists are ordered by
        their first element, which keeps callers that number the groups
        deterministic.

        """
        by_root = {}
        for item in self._parent:
            by_root.setdefault(self.find(item), []).append(item)
        groups = [sorted(g, key=key) for g in by_root.values()]
        groups.sort(key=lambda g: g[0] if key is None else key(g[0]))
        return groups
