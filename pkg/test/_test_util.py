from fractions import Fraction

import numpy as np

import reebcomp
from reebcomp.geom2 import RPoint


def grid_mesh(f1, f2, compactified=True):
    """
    A triangulated unit-spaced grid carrying the given fields.  ``f1`` and
    ``f2`` are square nested sequences indexed ``[j][i]`` (row ``j`` at
    ``y = j``); squares are split along their lower-left to upper-right
    diagonal, the way builtin meshes are.

    """
    rows = len(f1)
    cols = len(f1[0])
    coords = [(i, j) for j in range(rows) for i in range(cols)]
    v1 = [f1[j][i] for j in range(rows) for i in range(cols)]
    v2 = [f2[j][i] for j in range(rows) for i in range(cols)]
    simplices = []
    for j in range(rows - 1):
        for i in range(cols - 1):
            ll = j * cols + i
            lr, ul = ll + 1, ll + cols
            ur = ul + 1
            simplices.append((ll, lr, ur))
            simplices.append((ll, ur, ul))
    return reebcomp.SimplicialMesh(2, coords, v1, v2, simplices, compactified=compactified)


def random_grid_mesh(seed, n=12, high=20):
    """
    A compactified ``n x n`` vertex grid with integer random fields in
    ``[0, high)``, from a fixed seed.  ``n=12`` gives 242 triangles and
    ``n=21`` gives 800.
    """
    rng = np.random.default_rng(seed)
    f1 = rng.integers(high, size=(n, n)).tolist()
    f2 = rng.integers(high, size=(n, n)).tolist()
    return grid_mesh(f1, f2)


def single_triangle(f1=(0, 1, 2), f2=(0, 1, 2), compactified=False):
    return reebcomp.SimplicialMesh(2, [(0, 0), (1, 0), (0, 1)], f1, f2, [(0, 1, 2)], compactified=compactified)


def graphs_and_complement(mesh, **kwargs):
    g1, g2 = reebcomp.compute_graphs(mesh)
    return g1, g2, reebcomp.compute_complement(mesh, g1, g2, **kwargs)


def half(n):
    return Fraction(2 * n + 1, 2)


def random_triangles(seed, count=6, high=8):
    """
    ``count`` triangles with random rational corners in ``[0, high)``.  Small
    integer grids make shared edges and collinear corners common.
    """
    rng = np.random.default_rng(seed)
    nums = rng.integers(high * 2, size=(count, 3, 2)).tolist()
    return [[RPoint(Fraction(x, 2), Fraction(y, 2)) for x, y in tri] for tri in nums]
