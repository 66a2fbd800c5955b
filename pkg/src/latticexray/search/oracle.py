from __future__ import annotations

# 子集暴力预言机：只用于在极小半径下认证边向量序列枚举
from itertools import combinations

from latticexray.lattice_core import ConvexLatticePolygon, LatticePoint, monotone_chain


# 枚举 [−R,R]² 中全部中心对称、处于凸位置的顶点子集
def subset_oracle(radius: int) -> list[ConvexLatticePolygon]:
    # 每对 ±p 取字典序大于原点的那个作代表；原点不可能是二维对称多边形的顶点
    reps = [
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if (x, y) > (0, 0)
    ]
    found = []
    for size in range(2, len(reps) + 1):
        for subset in combinations(reps, size):
            points = [*subset, *((-x, -y) for x, y in subset)]
            hull = monotone_chain(points)
            # 每个点都必须是凸包的严格顶点
            if len(hull) == len(points):
                found.append(ConvexLatticePolygon(tuple(LatticePoint(x, y) for x, y in hull)))
    return sorted(found, key=lambda p: p.vertices)
