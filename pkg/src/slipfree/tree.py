"""Finite weighted rooted trees, their path metrics and edge-flow norms.

A molecule on the marked nodes maps to an edge flow: each edge carries the
total coefficient of the marked nodes hanging below it. The symmetric free
norm is then ``sum len * |flow|`` and the asymmetric one ``sum len * flow+``.
"""

from dataclasses import dataclass
from types import MappingProxyType

from .freespace import Molecule
from .rational import Fraction, to_fraction
from .space import SpaceError, validate


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedRootedTree:
    nodes: tuple
    parent: MappingProxyType
    length: MappingProxyType
    marked: tuple

    @classmethod
    def from_edges(cls, root, edges, marked=None):
        """``edges`` holds ``(child, parent, length)`` triples.

        Nodes are ordered root first, then breadth-first in edge order.
        ``marked`` defaults to every node; the root is always added.
        """
        parent, length = {}, {}
        for child, par, ln in edges:
            if child == root:
                raise TreeError(f"root {root!r} cannot have a parent")
            if child in parent:
                raise TreeError(f"node {child!r} has two parents")
            ln = to_fraction(ln)
            if ln <= 0:
                raise TreeError(f"edge {par!r}-{child!r} has nonpositive length {ln}")
            parent[child] = par
            length[child] = ln
        children = {}
        for child, par in parent.items():
            children.setdefault(par, []).append(child)
        order, queue = [root], [root]
        while queue:
            nxt = []
            for v in queue:
                nxt.extend(children.get(v, ()))
            order.extend(nxt)
            queue = nxt
        if len(order) != len(parent) + 1:
            missing = sorted(set(parent) | set(parent.values()) - set(order))
            raise TreeError(f"edges do not form a tree rooted at {root!r}: {missing}")
        if marked is None:
            marked = order
        marked = set(marked) | {root}
        unknown = marked - set(order)
        if unknown:
            raise TreeError(f"marked nodes not in tree: {sorted(unknown)}")
        return cls(tuple(order), MappingProxyType(parent), MappingProxyType(length),
                   tuple(v for v in order if v in marked))

    @property
    def root(self):
        return self.nodes[0]

    def ancestors(self, v) -> list:
        """``[v, parent(v), ..., root]``."""
        out = [v]
        while v in self.parent:
            v = self.parent[v]
            out.append(v)
        return out

    def depth(self, v) -> Fraction:
        return sum((self.length[a] for a in self.ancestors(v)[:-1]), Fraction(0))

    def meet(self, x, y):
        """Last common node of the root paths to ``x`` and ``y``."""
        up = set(self.ancestors(x))
        return next(a for a in self.ancestors(y) if a in up)

    def dist(self, x, y) -> Fraction:
        return self.depth(x) + self.depth(y) - 2 * self.depth(self.meet(x, y))

    def below(self, v) -> set:
        """Nodes of the subtree rooted at ``v``."""
        return {u for u in self.nodes if v in self.ancestors(u)}


def path_metric(tree: WeightedRootedTree):
    """The tree distance on marked nodes; the root is the base point."""
    pts = tree.marked
    return validate([[tree.dist(x, y) for y in pts] for x in pts], 0, pts)


def _check_molecule(tree, Q):
    if Q.space.labels != tree.marked:
        raise SpaceError("molecule is not supported on the tree's marked nodes", "domain")


def godard_embed(tree: WeightedRootedTree, Q: Molecule) -> dict:
    """Edge flows, keyed by the child node of each edge, in node order."""
    _check_molecule(tree, Q)
    flow = {v: Fraction(0) for v in tree.nodes[1:]}
    for i, c in Q.coefficients.items():
        for a in tree.ancestors(Q.space.labels[i])[:-1]:
            flow[a] += c
    return flow


def tree_asym_norm(tree: WeightedRootedTree, Q: Molecule) -> Fraction:
    flow = godard_embed(tree, Q)
    return sum((tree.length[v] * f for v, f in flow.items() if f > 0), Fraction(0))


def tree_sym_norm(tree: WeightedRootedTree, Q: Molecule) -> Fraction:
    flow = godard_embed(tree, Q)
    return sum((tree.length[v] * abs(f) for v, f in flow.items()), Fraction(0))


def atom_weights(tree: WeightedRootedTree) -> dict:
    """``{a: (pred, L)}`` for marked ``a`` other than the root.

    ``pred`` is the nearest strict marked ancestor and ``L`` its distance.
    """
    marked = set(tree.marked)
    out = {}
    for a in tree.marked[1:]:
        pred = next(v for v in tree.ancestors(a)[1:] if v in marked)
        out[a] = (pred, tree.depth(a) - tree.depth(pred))
    return out


def path_tree(points):
    """Nonnegative reals as a path rooted at 0, consecutive points joined."""
    pts = sorted(to_fraction(p) for p in points)
    if not pts or pts[0] != 0:
        raise TreeError("a path tree needs 0 as its smallest point")
    labels = [str(p) for p in pts]
    edges = [(labels[k], labels[k - 1], pts[k] - pts[k - 1]) for k in range(1, len(pts))]
    return WeightedRootedTree.from_edges(labels[0], edges)


def marked_branching(tree: WeightedRootedTree) -> bool:
    """True when no unmarked node joins two branches that reach marked nodes.

    On such trees the monotone-cone quasi-metric is ``D(x ^ y, y)`` and the
    edge-flow asymmetric norm agrees with the LP value.
    """
    marked = set(tree.marked)
    reaching = {}
    for v in reversed(tree.nodes):
        kids = [c for c, p in tree.parent.items() if p == v]
        live = sum(1 for c in kids if reaching[c])
        reaching[v] = v in marked or live > 0
        if v not in marked and live > 1:
            return False
    return True
