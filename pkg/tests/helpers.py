import networkx as nx

from bisimctl.system import reachable


def _graph(ts):
    g = nx.MultiDiGraph()
    for s in ts.states:
        g.add_node(s, initial=(s == ts.initial))
    for a, lab, b in ts.transitions:
        g.add_edge(a, b, label=lab)
    return g


def isomorphic(t1, t2, reachable_only=True):
    """Labeled-graph isomorphism preserving the initial state."""
    if reachable_only:
        t1, t2 = reachable(t1), reachable(t2)
    if t1.label_set != t2.label_set:
        return False
    return nx.is_isomorphic(
        _graph(t1),
        _graph(t2),
        node_match=lambda x, y: x["initial"] == y["initial"],
        edge_match=lambda x, y: sorted(e["label"] for e in x.values()) == sorted(e["label"] for e in y.values()),
    )
