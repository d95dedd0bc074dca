"""
DOT and JSON renderings of automata, product games and equilibrium reports.
"""
from collections import defaultdict
from typing import Dict, List, Optional

from .ltlf import Dfa, mask_letter
from .preference import PreferenceAutomaton, preference_graph
from .product import ProductGame
from .solve import NashReport

PLAYER_COLORS = {1: "blue", 2: "red"}


def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _letter(mask: int, ap) -> str:
    return "{" + ",".join(sorted(mask_letter(mask, ap))) + "}"


def _grouped_edges(delta, ap) -> List[str]:
    lines = []
    for q, row in enumerate(delta):
        targets: Dict[int, List[str]] = defaultdict(list)
        for mask, r in enumerate(row):
            targets[r].append(_letter(mask, ap))
        for r in sorted(targets):
            lines.append(f"  {q} -> {r} [label={_quote(' '.join(targets[r]))}];")
    return lines


def dfa_to_dot(d: Dfa, name: str = "dfa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];", f"  __start -> {d.initial};"]
    for q in range(d.n_states):
        shape = "doublecircle" if q in d.accepting else "circle"
        tooltip = d.names[q] if d.names else str(q)
        lines.append(f"  {q} [shape={shape}, tooltip={_quote(tooltip)}];")
    lines.extend(_grouped_edges(d.delta, d.ap))
    lines.append("}")
    return "\n".join(lines) + "\n"


def dfa_to_json(d: Dfa) -> Dict:
    return {
        "ap": list(d.ap),
        "states": d.n_states,
        "initial": d.initial,
        "accepting": sorted(d.accepting),
        "delta": [[q, mask, r] for q, row in enumerate(d.delta) for mask, r in enumerate(row)],
    }


def automaton_to_dot(p: PreferenceAutomaton) -> str:
    """Semi-automaton and preference graph as two digraphs."""
    lines = ["digraph semi_automaton {", "  rankdir=LR;", "  __start [shape=point];", f"  __start -> {p.initial};"]
    for q in range(p.n_states):
        sat = sorted(p.sat[q]) if p.sat else []
        label = f"{q}\\n{{{','.join(str(i) for i in sat)}}}"
        lines.append(f"  {q} [shape=circle, label=\"{label}\"];")
    lines.extend(_grouped_edges(p.delta, p.ap))
    lines.append("}")
    graph = preference_graph(p)
    lines.append("digraph preference_graph {")
    for node, members in sorted(graph.nodes(data="members")):
        lines.append(f"  {node} [shape=box, label={_quote(str(node) + ': ' + ','.join(map(str, members)))}];")
    for u, v in sorted(graph.edges()):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def automaton_to_json(p: PreferenceAutomaton) -> Dict:
    graph = preference_graph(p)
    return {
        "ap": list(p.ap),
        "alternatives": list(p.alternatives),
        "empty_policy": p.empty_policy,
        "states": p.n_states,
        "initial": p.initial,
        "delta": [[q, mask, r] for q, row in enumerate(p.delta) for mask, r in enumerate(row)],
        "sat": [sorted(s) for s in p.sat],
        "preorder": sorted([q, r] for q, r in p.order.relation),
        "preference_graph": {
            "nodes": [{"id": n, "members": list(m)} for n, m in sorted(graph.nodes(data="members"))],
            "edges": sorted([u, v] for u, v in graph.edges()),
        },
    }


def product_to_dot(h: ProductGame, report: Optional[NashReport] = None) -> str:
    """
    Product graph; with a report, equilibrium outcomes are filled and edges
    allowed by the permissive maximal sure winning strategies are colored.
    """
    outcomes = set(report.outcomes) if report else set()
    lines = ["digraph product {", "  __start [shape=point];", "  __start -> 0;"]
    for v in range(h.n_states):
        shape = "box" if h.owner[v] == 1 else "diamond"
        if h.is_sink(v):
            shape = "doublecircle"
        tooltip = (f"owner=P{h.owner[v]} q={h.q(v)} rank1={h.rank1[v]} rank2={h.rank2[v]} "
                   f"sink={h.is_sink(v)}")
        style = ", style=filled, fillcolor=gold" if v in outcomes else ""
        lines.append(f"  {v} [shape={shape}, label={_quote(h.state_name(v))}, tooltip={_quote(tooltip)}{style}];")
    for v, edges in enumerate(h.succ):
        for a, w in edges:
            attrs = [f"label={_quote(a)}"]
            if report is not None:
                strategy = report.permissive.get(h.owner[v])
                if strategy is not None and v in strategy.actions and a in strategy.actions[v]:
                    attrs.append(f"color={PLAYER_COLORS[h.owner[v]]}")
                    attrs.append("penwidth=2")
            lines.append(f"  {v} -> {w} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def product_to_json(h: ProductGame) -> Dict:
    return {
        "init": h.state_name(h.init),
        "kmax": [h.kmax1, h.kmax2],
        "states": [{"id": h.state_name(v), "owner": h.owner[v], "q": h.q(v), "rank1": h.rank1[v],
                    "rank2": h.rank2[v], "sink": h.is_sink(v)} for v in range(h.n_states)],
        "trans": [[h.state_name(v), a, h.state_name(w)] for v, edges in enumerate(h.succ) for a, w in edges],
    }
