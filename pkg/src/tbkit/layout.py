"""Horizontal dependency-graph geometry for the annotation UI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Arc:
    head: int
    dep: int
    label: str
    height: int

    @property
    def left(self):
        return min(self.head, self.dep)

    @property
    def right(self):
        return max(self.head, self.dep)


def graph_layout(sentence):
    """Token boxes in id order plus arcs with minimal nesting heights.

    An arc's height is 1 + the maximum height of arcs strictly nested
    inside its span, so no two nested arcs share a rank.
    """
    boxes = [
        {"id": tok.id, "form": tok.form, "upos": tok.upos or "_"}
        for tok in sentence.tokens
    ]
    raw = [
        (min(t.head, t.id), max(t.head, t.id), t.head, t.id, t.deprel)
        for t in sentence.tokens
        if t.head is not None and t.head > 0
    ]
    raw.sort(key=lambda a: (a[1] - a[0], a[0]))
    placed = []
    for left, right, head, dep, label in raw:
        inner = [
            a for a in placed
            if left <= a.left and a.right <= right and (a.left, a.right) != (left, right)
        ]
        height = 1 + max((a.height for a in inner), default=0)
        placed.append(Arc(head=head, dep=dep, label=label, height=height))
    placed.sort(key=lambda a: (a.left, a.right))
    arcs = [
        {"head": a.head, "dep": a.dep, "label": a.label, "height": a.height}
        for a in placed
    ]
    return {"tokens": boxes, "arcs": arcs}
