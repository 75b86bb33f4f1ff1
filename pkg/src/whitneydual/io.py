"""JSON and DOT serialization for posets and edge labelings.

Poset JSON:    {"elements": [str, ...], "covers": [[i, j], ...]}
Labeling JSON: {"label_poset": {"labels": [...], "less": [[i, j], ...]},
                "labels_of_covers": [[coverIndex, labelIndex], ...]}
Cover indices refer to positions in the poset's sorted cover list.  Ranks are
recomputed on load; non-graded or non-reduced input is rejected.
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import NotGradedError
from .labeling import EdgeLabeling, LabelPoset
from .poset import GradedPoset


def poset_to_json(p: GradedPoset) -> str:
    return json.dumps(
        {"elements": list(p.payloads_), "covers": [list(c) for c in p.covers]}
    )


def poset_from_json(text: str) -> GradedPoset:
    data = json.loads(text)
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise NotGradedError("poset JSON needs 'elements' and 'covers'")
    return GradedPoset(
        [str(e) for e in data["elements"]],
        [(int(a), int(b)) for a, b in data["covers"]],
    )


def labeling_to_json(labeling: EdgeLabeling) -> str:
    p = labeling.poset
    lp = labeling.label_poset
    less = [
        [i, j]
        for i in range(len(lp))
        for j in range(len(lp))
        if lp.less(i, j)
    ]
    covers = {cov: k for k, cov in enumerate(p.covers)}
    labels_of = sorted(
        [covers[cov], lab] for cov, lab in labeling.label_of.items()
    )
    return json.dumps(
        {
            "label_poset": {"labels": list(lp.names), "less": less},
            "labels_of_covers": labels_of,
        }
    )


def labeling_from_json(p: GradedPoset, text: str) -> EdgeLabeling:
    data = json.loads(text)
    lp_data = data["label_poset"]
    lp = LabelPoset.from_pairs(
        [str(s) for s in lp_data["labels"]],
        [(int(i), int(j)) for i, j in lp_data["less"]],
        transitive_close=False,
    )
    label_of = {}
    for k, lab in data["labels_of_covers"]:
        label_of[p.covers[int(k)]] = int(lab)
    return EdgeLabeling(p, lp, label_of)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(p: GradedPoset, labeling: Optional[EdgeLabeling] = None) -> str:
    """Graphviz digraph, one node per element, covers drawn upward."""
    lines = ["digraph poset {", "  rankdir=BT;"]
    for x in p.elements():
        lines.append(f"  n{x} [label={_quote(p.payload(x))}];")
    for a, b in p.covers:
        attr = ""
        if labeling is not None:
            name = labeling.label_poset.names[labeling.label_of[(a, b)]]
            attr = f" [label={_quote(name)}]"
        lines.append(f"  n{a} -> n{b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
