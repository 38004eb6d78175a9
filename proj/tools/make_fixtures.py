#!/usr/bin/env python3
"""Writes the JSON fixtures used by the CLI tests and the README examples."""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def groupoid(units, arrows, product):
    """arrows: {id: (dom, ran)}; product(g, h) -> id for composable pairs."""
    doc = {"units": units, "arrows": [], "compose": []}
    for i, (d, r) in arrows.items():
        doc["arrows"].append({"id": i, "dom": d, "ran": r})
    for g, (dg, _) in arrows.items():
        for h, (_, rh) in arrows.items():
            if dg == rh:
                doc["compose"].append([g, h, product(g, h)])
    return doc


def pair(units, offset=0):
    n = len(units)
    arrows = {offset + r * n + d: (units[d], units[r]) for r in range(n) for d in range(n)}

    def product(g, h):
        rg, _ = divmod(g - offset, n)
        _, dh = divmod(h - offset, n)
        return offset + rg * n + dh

    return arrows, product


def cyclic(order, unit, offset=0):
    arrows = {offset + k: (unit, unit) for k in range(order)}
    return arrows, lambda g, h: offset + (g - offset + h - offset) % order


def action(points, order, act):
    """Right action of ℤ/order; arrow (x, g) = id x·order + g runs from x·g⁻¹ to x."""
    arrows = {}
    for x in range(len(points)):
        for g in range(order):
            arrows[x * order + g] = (points[act(x, (-g) % order)], points[x])

    def product(a, b):
        x, g = divmod(a, order)
        _, h = divmod(b, order)
        return x * order + (g + h) % order

    return arrows, product


def union(*parts):
    arrows, products = {}, []
    for a, p in parts:
        arrows.update(a)
        products.append((set(a), p))
    return arrows, lambda g, h: next(p for ids, p in products if g in ids)(g, h)


def write(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=1) + "\n")


def band(w, diagonals):
    return {"bandwidth": w, "diagonals": [dict(offset=k, **d) for k, d in diagonals.items()]}


def main():
    OUT.mkdir(exist_ok=True)
    write("pair3.json", groupoid(["1", "2", "3"], *pair(["1", "2", "3"])))
    split = union(pair(["1", "2"]), cyclic(2, "3", offset=4))
    write("split.json", groupoid(["1", "2", "3"], *split))
    write("split_cover.json", {"cover": [["1", "2"], ["3"]]})
    write("pair3_cover.json", {"cover": [["1"], ["2"]]})
    write("split_bad_cover.json", {"cover": [["1"]]})
    write("swap.json", groupoid(["a", "b"], *action(["a", "b"], 2, lambda x, g: x ^ g)))

    broken = groupoid(["1", "2", "3"], *pair(["1", "2", "3"]))
    broken["compose"][0][2] = 4
    write("pair3_broken.json", broken)
    (OUT / "malformed.json").write_text('{"units": ["1", "2"], "arrows": [\n  {"id": 0, "dom": "1"\n')

    write("laplacian_limits.json", band(1, {
        -1: {"limit_minus": 1, "limit_plus": 1},
        0: {"limit_minus": -3, "limit_plus": 3, "core": [[0, 0.5, 0], [1, -7, 0]]},
        1: {"limit_minus": 1, "limit_plus": 1},
    }))
    write("free_laplacian.json", band(1, {
        -1: {"limit_minus": 1, "limit_plus": 1},
        0: {"limit_minus": -2, "limit_plus": -2},
        1: {"limit_minus": 1, "limit_plus": 1},
    }))

    # Gluing families; ids follow the conventions above.
    write("piece_pair3.json", groupoid(["1", "2", "3"], *pair(["1", "2", "3"])))
    ident = [[i, i] for i in range(9)]
    write("family_duplicate.json", {
        "units": ["1", "2", "3"],
        "pieces": ["piece_pair3.json", "piece_pair3.json"],
        "isos": [{"from": 0, "to": 1, "arrows": ident}, {"from": 1, "to": 0, "arrows": ident}],
    })
    write("family_overlap.json", {
        "units": ["1", "2", "3"],
        "pieces": [groupoid(["1", "2"], *pair(["1", "2"])), groupoid(["2", "3"], *pair(["2", "3"]))],
        "isos": [{"from": 0, "to": 1, "arrows": [[3, 0]]}, {"from": 1, "to": 0, "arrows": [[0, 3]]}],
    })
    chart_act = [[0, 0], [1, 2], [2, 1]]
    chart = groupoid(["p", "a", "b"], *action(["p", "a", "b"], 2, lambda x, g: chart_act[x][g]))
    forward = [[x * 2 + g, (x - 1) * 3 + chart_act[x][g] - 1] for x in (1, 2) for g in (0, 1)]
    write("family_bmodel.json", {
        "units": ["p", "a", "b", "c"],
        "pieces": [chart, groupoid(["a", "b", "c"], *pair(["a", "b", "c"]))],
        "isos": [{"from": 0, "to": 1, "arrows": forward},
                 {"from": 1, "to": 0, "arrows": [[b, a] for a, b in forward]}],
    })
    # (pair on {1, 2}) × ℤ/3 with arrow id pair_id·3 + k; the forward table inverts k.
    pairs, pair_product = pair(["1", "2"])
    arrows = {p * 3 + k: ends for p, ends in pairs.items() for k in range(3)}
    product = lambda g, h: pair_product(g // 3, h // 3) * 3 + (g % 3 + h % 3) % 3
    piece = groupoid(["1", "2"], arrows, product)
    write("family_cocycle.json", {
        "units": ["1", "2"],
        "pieces": [piece, piece],
        "isos": [{"from": 0, "to": 1, "arrows": [[i, i - i % 3 + (3 - i % 3) % 3] for i in arrows]},
                 {"from": 1, "to": 0, "arrows": [[i, i] for i in arrows]}],
    })


if __name__ == "__main__":
    main()
