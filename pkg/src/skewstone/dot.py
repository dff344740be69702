"""DOT export: Hasse diagrams for orders, dashed fibration edges for stalks."""

from . import balg, bset, etale, skew


def _q(s):
    return '"' + s.replace('"', r'\"') + '"'


def balg_dot(B, name):
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for e in B.elements:
        lines.append(f"  {_q(e)};")
    for upper, lower in B.cover_pairs:
        lines.append(f"  {_q(lower)} -> {_q(upper)};")
    lines.append("}")
    return "\n".join(lines)


def _order_covers(elements, leq):
    covers = []
    for x in elements:
        for y in elements:
            if x != y and leq(x, y) and not any(
                z != x and z != y and leq(x, z) and leq(z, y) for z in elements
            ):
                covers.append((x, y))
    return covers


def skew_dot(S, name):
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for e in S.elements:
        lines.append(f"  {_q(e)};")
    for x, y in _order_covers(S.elements, S.leq):
        lines.append(f"  {_q(x)} -> {_q(y)};")
    lines.append("}")
    return "\n".join(lines)


def bset_dot(X, name):
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for e in X.base.elements:
        lines.append(f"  {_q(e)} [shape=box];")
    for upper, lower in X.base.cover_pairs:
        lines.append(f"  {_q(lower)} -> {_q(upper)};")
    for x in X.elements:
        lines.append(f"  {_q(x)};")
    for x, y in _order_covers(X.elements, X.leq_elem):
        lines.append(f"  {_q(x)} -> {_q(y)};")
    for x in X.elements:
        lines.append(f"  {_q(x)} -> {_q(X.p(x))} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)


def etale_dot(sp, name):
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for x in sp.base:
        lines.append(f"  {_q(x)} [shape=box];")
    for e in sp.total:
        lines.append(f"  {_q(e)};")
        lines.append(f"  {_q(e)} -> {_q(sp.proj[e])} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)


def export(obj, name):
    if isinstance(obj, bset.BooleanSet):
        return bset_dot(obj, name)
    if isinstance(obj, balg.FinBooleanAlgebra):
        return balg_dot(obj, name)
    if isinstance(obj, skew.SkewAlgebra):
        return skew_dot(obj, name)
    if isinstance(obj, bset.RightNormalBand):
        return skew_dot(obj, name)
    if isinstance(obj, etale.FinEtaleSpace):
        return etale_dot(obj, name)
    raise ValueError(f"no DOT rendering for {type(obj).__name__}")
