"""
First-order pair similarity indices on a snapshot.

With Γ the neighbour set, k the degree and I = |Γ(u) ∩ Γ(v)|, every ratio is
0 when its denominator is 0, and Adamic-Adar skips common neighbours of
degree 1.
"""

import math

from common.errors import NodeRangeError

SIMILARITY_NAMES = (
    "cn", "jaccard", "dice", "simpson", "cosine", "geometric",
    "adamic_adar", "resource_alloc", "pa_product", "pa_sum", "total_neighbors",
)


def _check_nodes(s, u, v):
    for node in (u, v):
        if node < 0 or node >= s.num_nodes:
            raise NodeRangeError(f"node {node} outside [0, {s.num_nodes})", node=int(node))
    if u == v:
        raise NodeRangeError(f"pair endpoints must differ, got ({u}, {v})", node=int(u))


def _ratio(num, den):
    return num / den if den else 0.0


def pair_similarity_features(s, u, v):
    _check_nodes(s, u, v)
    gu = s.neighbor_sets[u]
    gv = s.neighbor_sets[v]
    ku = len(gu)
    kv = len(gv)
    common = gu & gv
    inter = len(common)
    union = ku + kv - inter

    adamic_adar = 0.0
    resource_alloc = 0.0
    for z in sorted(common):
        kz = int(s.degree[z])
        resource_alloc += 1.0 / kz
        if kz > 1:
            adamic_adar += 1.0 / math.log(kz)

    return {
        "cn": float(inter),
        "jaccard": _ratio(inter, union),
        "dice": _ratio(2.0 * inter, ku + kv),
        "simpson": _ratio(inter, min(ku, kv)),
        "cosine": _ratio(inter, math.sqrt(ku * kv)),
        "geometric": _ratio(inter * inter, ku * kv),
        "adamic_adar": adamic_adar,
        "resource_alloc": resource_alloc,
        "pa_product": float(ku * kv),
        "pa_sum": float(ku + kv),
        "total_neighbors": float(union),
    }
