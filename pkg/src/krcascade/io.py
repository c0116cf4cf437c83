"""Document formats (JSON), decomposition reports, and DOT export."""

from __future__ import annotations

import json

from .automata import (
    CoveringWitness,
    HomImageWitness,
    Semiautomaton,
    simulation_counterexample,
    verify_covering,
)
from .errors import ParseError
from .pipeline import (
    CascadeNode,
    Leaf,
    is_complete,
    summarize_leaves,
)

FORMAT_VERSION = 1


def _load_object(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("not valid JSON: %s" % exc) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


def _check_version(doc):
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError("format_version must be %d" % FORMAT_VERSION)


def _label_list(doc, field):
    value = doc.get(field)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError("%s must be a list of strings" % field)
    seen = set()
    for x in value:
        if x in seen:
            raise ParseError("duplicate label %r in %s" % (x, field))
        seen.add(x)
    return value


def parse_automaton(text) -> Semiautomaton:
    """Read an automaton document; transitions are one row per symbol label."""
    doc = _load_object(text)
    _check_version(doc)
    states = _label_list(doc, "states")
    alphabet = _label_list(doc, "alphabet")
    if not states:
        raise ParseError("states must be nonempty")
    transitions = doc.get("transitions")
    if not isinstance(transitions, dict):
        raise ParseError("transitions must be an object keyed by symbol label")
    for key in transitions:
        if key not in alphabet:
            raise ParseError("transitions has a row for unknown symbol %r" % key)
    state_index = {lab: i for i, lab in enumerate(states)}
    columns = []
    for sym in alphabet:
        row = transitions.get(sym)
        if row is None:
            raise ParseError("missing transition row for symbol %r" % sym)
        if not isinstance(row, list) or len(row) != len(states):
            raise ParseError(
                "transition row for symbol %r must have length %d" % (sym, len(states))
            )
        col = []
        for k, target in enumerate(row):
            if target not in state_index:
                raise ParseError(
                    "unknown state label %r in row for symbol %r (position %d)"
                    % (target, sym, k)
                )
            col.append(state_index[target])
        columns.append(col)
    return Semiautomaton.from_columns(states, alphabet, columns)


def emit_automaton(A: Semiautomaton) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "states": list(A.state_labels),
        "alphabet": list(A.symbol_labels),
        "transitions": {
            A.symbol_labels[a]: [A.state_labels[A.delta[s][a]] for s in range(A.n_states)]
            for a in range(A.n_symbols)
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def emit_witness(w) -> str:
    if isinstance(w, CoveringWitness):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "covering",
            "phi": [
                [w.upper.state_labels[s], w.lower.state_labels[w.phi[s]]]
                for s in w.dom
            ],
            "xi": [
                [w.lower.symbol_labels[a], w.upper.symbol_labels[w.xi[a]]]
                for a in range(w.lower.n_symbols)
            ],
        }
    elif isinstance(w, HomImageWitness):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "hom-image",
            "phi": [
                [w.source.state_labels[s], w.target.state_labels[w.phi[s]]]
                for s in range(w.source.n_states)
            ],
            "xi": [
                [w.source.symbol_labels[a], w.target.symbol_labels[w.xi[a]]]
                for a in range(w.source.n_symbols)
            ],
        }
    else:
        raise ParseError("not a witness object")
    return json.dumps(doc, indent=2) + "\n"


def _pair_list(doc, field):
    value = doc.get(field)
    if not isinstance(value, list):
        raise ParseError("%s must be a list of label pairs" % field)
    for item in value:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            raise ParseError("%s entries must be [label, label] pairs" % field)
    return value


def parse_witness(text, upper: Semiautomaton, lower: Semiautomaton):
    """Read a witness document against two already-parsed automata.

    Covering documents map upper states onto lower states partially; hom-image
    documents read the first automaton as the source and the second as the
    target, with total maps. Semantic violations are left to the verifiers, so
    a structurally well-formed but wrong witness parses fine.
    """
    doc = _load_object(text)
    _check_version(doc)
    kind = doc.get("kind")
    if kind == "covering":
        phi = [None] * upper.n_states
        for up, low in _pair_list(doc, "phi"):
            if up not in upper._state_index:
                raise ParseError("unknown upper state %r in phi" % up)
            if low not in lower._state_index:
                raise ParseError("unknown lower state %r in phi" % low)
            s = upper.state_index(up)
            if phi[s] is not None:
                raise ParseError("upper state %r mapped twice in phi" % up)
            phi[s] = lower.state_index(low)
        xi = [None] * lower.n_symbols
        for low, up in _pair_list(doc, "xi"):
            if low not in lower._symbol_index:
                raise ParseError("unknown lower symbol %r in xi" % low)
            if up not in upper._symbol_index:
                raise ParseError("unknown upper symbol %r in xi" % up)
            a = lower.symbol_index(low)
            if xi[a] is not None:
                raise ParseError("lower symbol %r mapped twice in xi" % low)
            xi[a] = upper.symbol_index(up)
        for a, x in enumerate(xi):
            if x is None:
                raise ParseError("xi gives no image for symbol %r" % lower.symbol_labels[a])
        return CoveringWitness(upper, lower, phi, xi, check=False)
    if kind == "hom-image":
        source, target = upper, lower
        phi = [None] * source.n_states
        for src, tgt in _pair_list(doc, "phi"):
            if src not in source._state_index:
                raise ParseError("unknown source state %r in phi" % src)
            if tgt not in target._state_index:
                raise ParseError("unknown target state %r in phi" % tgt)
            phi[source.state_index(src)] = target.state_index(tgt)
        if any(v is None for v in phi):
            raise ParseError("phi must cover every source state")
        xi = [None] * source.n_symbols
        for src, tgt in _pair_list(doc, "xi"):
            if src not in source._symbol_index:
                raise ParseError("unknown source symbol %r in xi" % src)
            if tgt not in target._symbol_index:
                raise ParseError("unknown target symbol %r in xi" % tgt)
            xi[source.symbol_index(src)] = target.symbol_index(tgt)
        if any(v is None for v in xi):
            raise ParseError("xi must cover every source symbol")
        return HomImageWitness(source, target, phi, xi, check=False)
    raise ParseError("kind must be 'covering' or 'hom-image'")


def _node_report(node) -> dict:
    res = verify_covering(node.witness)
    out = {
        "states": node.automaton.n_states,
        "symbols": node.automaton.n_symbols,
        "witness_verified": bool(res),
    }
    if not res:
        out["witness_failure"] = res.reason
    if isinstance(node, Leaf):
        out["type"] = "leaf"
        out["kind"] = node.kind
        if node.group is not None:
            out["group_order"] = node.group.order
            out["abelian"] = node.group.is_abelian()
        if node.reason:
            out["reason"] = node.reason
    else:
        out["type"] = "cascade" if isinstance(node, CascadeNode) else "direct"
        out["left"] = _node_report(node.left)
        out["right"] = _node_report(node.right)
    return out


def _all_verified(node_report: dict) -> bool:
    if not node_report["witness_verified"]:
        return False
    if node_report["type"] == "leaf":
        return True
    return _all_verified(node_report["left"]) and _all_verified(node_report["right"])


def tree_report(tree, sim_len: int = 6) -> dict:
    """Machine-readable report: completeness, witness status, leaf census."""
    root = _node_report(tree)
    verified = _all_verified(root)
    report = {
        "format_version": FORMAT_VERSION,
        "complete": is_complete(tree),
        "witnesses_verified": verified,
        "simulation_length": sim_len,
        "covered_states": tree.witness.lower.n_states,
        "composite_states": tree.automaton.n_states,
        "leaves": [
            {"description": desc, "count": count}
            for desc, count in summarize_leaves(tree)
        ],
        "root": root,
    }
    if verified and sim_len > 0:
        bad = simulation_counterexample(tree.witness, sim_len)
        report["simulation_ok"] = bad is None
        if bad is not None:
            s, word = bad
            report["simulation_failure"] = {
                "state": tree.witness.upper.state_labels[s],
                "word": [tree.witness.lower.symbol_labels[a] for a in word],
            }
    return report


def _render_node(node_report: dict, indent: int, lines):
    pad = "  " * indent
    status = "ok" if node_report["witness_verified"] else (
        "FAILED (%s)" % node_report.get("witness_failure", "")
    )
    if node_report["type"] == "leaf":
        extra = ""
        if "group_order" in node_report:
            extra = ", group order %d" % node_report["group_order"]
        if "reason" in node_report:
            extra = ", %s" % node_report["reason"]
        lines.append(
            "%sleaf %s [%d states%s] witness %s"
            % (pad, node_report["kind"], node_report["states"], extra, status)
        )
    else:
        lines.append(
            "%s%s [%d states, %d inputs] witness %s"
            % (
                pad,
                node_report["type"],
                node_report["states"],
                node_report["symbols"],
                status,
            )
        )
        _render_node(node_report["left"], indent + 1, lines)
        _render_node(node_report["right"], indent + 1, lines)


def render_tree_text(report: dict) -> str:
    lines = []
    lines.append(
        "decomposition of a %d-state automaton into a %d-state cascade: %s, witnesses %s"
        % (
            report["covered_states"],
            report["composite_states"],
            "complete" if report["complete"] else "INCOMPLETE",
            "verified" if report["witnesses_verified"] else "NOT verified",
        )
    )
    if "simulation_ok" in report:
        lines.append(
            "simulation to length %d: %s"
            % (report["simulation_length"], "ok" if report["simulation_ok"] else "FAILED")
        )
    lines.append("leaves:")
    for entry in report["leaves"]:
        lines.append("  %d x %s" % (entry["count"], entry["description"]))
    lines.append("tree:")
    _render_node(report["root"], 1, lines)
    return "\n".join(lines) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(A: Semiautomaton) -> str:
    """DOT digraph, one node per state, parallel edges merged into one label."""
    lines = ["digraph semiautomaton {", "  rankdir=LR;"]
    for lab in A.state_labels:
        lines.append('  "%s";' % _dot_escape(lab))
    for s in range(A.n_states):
        targets = {}
        for a in range(A.n_symbols):
            targets.setdefault(A.delta[s][a], []).append(A.symbol_labels[a])
        for t in sorted(targets):
            lines.append(
                '  "%s" -> "%s" [label="%s"];'
                % (
                    _dot_escape(A.state_labels[s]),
                    _dot_escape(A.state_labels[t]),
                    _dot_escape(",".join(targets[t])),
                )
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
