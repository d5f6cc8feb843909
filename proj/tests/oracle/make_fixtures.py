#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under tests/data.

Deterministic: the same seed always yields byte-identical files.

    python3 tests/oracle/make_fixtures.py tests/data
"""
import random
import sys
from pathlib import Path


def go_subset(rng):
    lines = [
        "format-version: 1.2",
        "data-version: fixture/2011-07-01",
        "ontology: go",
        "default-namespace: gene_ontology",
        "! hand-rolled GO-style subset for parser tests",
        "",
    ]
    roots = {
        "molecular_function": ("GO:0003674", 70),
        "biological_process": ("GO:0008150", 50),
        "cellular_component": ("GO:0005575", 30),
    }
    used = {r for r, _ in roots.values()}
    terms = []  # (id, name, ns, is_a, rels, obsolete)
    by_ns = {}
    for ns, (root, count) in roots.items():
        ids = [root]
        terms.append((root, ns.replace("_", " "), ns, [], [], False))
        for k in range(count - 1):
            while True:
                tid = "GO:%07d" % rng.randrange(10000, 2000000)
                if tid not in used:
                    used.add(tid)
                    break
            nparents = 1 if rng.random() < 0.75 or len(ids) < 3 else 2
            pool = ids[-12:] if rng.random() < 0.7 else ids
            parents = sorted(set(rng.sample(pool, min(nparents, len(pool)))))
            rels = []
            if len(ids) > 4 and rng.random() < 0.15:
                target = rng.choice(ids[:-1])
                if target not in parents:
                    rels.append(("part_of", target))
            terms.append((tid, "%s term %d" % (ns.split("_")[0], k + 1), ns, parents, rels, False))
            ids.append(tid)
        by_ns[ns] = ids
    # cross-namespace relationships (dropped by a namespace filter)
    mf = [t for t in terms if t[2] == "molecular_function"]
    for t in rng.sample(mf[1:], 3):
        t[4].append(("part_of", rng.choice(by_ns["biological_process"])))
    bp = [t for t in terms if t[2] == "biological_process"]
    for t in rng.sample(bp[1:], 2):
        t[4].append(("occurs_in", rng.choice(by_ns["cellular_component"])))
    # obsolete terms; one is pointed at by a live term
    obsolete_ids = []
    for ns in ("molecular_function", "molecular_function", "biological_process", "cellular_component"):
        while True:
            tid = "GO:%07d" % rng.randrange(10000, 2000000)
            if tid not in used:
                used.add(tid)
                break
        terms.append((tid, "obsolete %s thing" % ns.split("_")[0], ns, [], [], True))
        obsolete_ids.append(tid)
    mf[5][3].append(obsolete_ids[0])

    names = {t[0]: t[1] for t in terms}
    order = list(terms)
    rng.shuffle(order)
    for tid, name, ns, parents, rels, obsolete in order:
        lines.append("[Term]")
        lines.append("id: " + tid)
        lines.append("name: " + name)
        lines.append("namespace: " + ns)
        if rng.random() < 0.5:
            lines.append('def: "A synthetic definition of %s." [GOC:fixture]' % name)
        if rng.random() < 0.3:
            lines.append('synonym: "%s alias" EXACT []' % name)
        for p in parents:
            comment = names.get(p, "")
            lines.append("is_a: %s ! %s" % (p, comment) if comment else "is_a: " + p)
        for rtype, target in rels:
            lines.append("relationship: %s %s ! %s" % (rtype, target, names[target]))
        if obsolete:
            lines.append("is_obsolete: true")
        if rng.random() < 0.2:
            lines.append("xref: EC:1.%d.%d.-" % (rng.randrange(1, 20), rng.randrange(1, 20)))
        lines.append("")
    lines += [
        "[Typedef]",
        "id: part_of",
        "name: part of",
        "is_transitive: true",
        "",
        "[Typedef]",
        "id: occurs_in",
        "name: occurs in",
        "",
    ]
    return "\n".join(lines)


def synthetic(rng):
    """Ontology, 50-gene corpus and bit scores for the benchmark fixture."""
    root = "S:0000000"
    levels = [[root]]
    parents = {root: []}
    counter = 1
    for depth, width in enumerate([3, 6, 9, 10, 8], start=1):
        level = []
        for _ in range(width):
            tid = "S:%07d" % counter
            counter += 1
            prev = levels[-1]
            ps = {rng.choice(prev)}
            if depth > 1 and rng.random() < 0.3:
                ps.add(rng.choice(prev))
            if depth > 2 and rng.random() < 0.15:
                ps.add(rng.choice(levels[-2]))
            parents[tid] = sorted(ps)
            level.append(tid)
        levels.append(level)
    obo = ["format-version: 1.2", "ontology: synthetic", ""]
    for tid in sorted(parents):
        obo.append("[Term]")
        obo.append("id: " + tid)
        obo.append("name: synthetic function " + tid[2:])
        obo.append("namespace: synthetic_function")
        for p in parents[tid]:
            obo.append("is_a: " + p)
        obo.append("")
    obo += ["[Term]", "id: S:9999999", "name: retired", "namespace: synthetic_function",
            "is_a: S:0000001", "is_obsolete: true", ""]

    deep = levels[3] + levels[4] + levels[5]
    genes = ["P%02d" % i for i in range(1, 51)]
    family = {g: i % 8 for i, g in enumerate(genes)}
    family_terms = {f: rng.sample(deep, 2) for f in range(8)}
    ann = []
    for g in genes[:-1]:
        f = family[g]
        terms = set(rng.sample(family_terms[f], rng.choice([1, 2])))
        if rng.random() < 0.5:
            terms.add(rng.choice(deep))
        if rng.random() < 0.3:
            terms.add(rng.choice(levels[1]))  # shallow, filtered at min depth 2
        for t in sorted(terms):
            ann.append("%s\t%s" % (g, t))
    ann.append("P50\tS:0000001")  # only shallow annotations: leaves the corpus
    ann.append("P07\tX:0000404")  # unknown term
    rng.shuffle(ann)

    self_score = {g: round(rng.uniform(200, 900), 1) for g in genes}
    bits = []
    for g in genes:
        bits.append((g, g, self_score[g]))
    for i, a in enumerate(genes):
        for b in genes[i + 1:]:
            same = family[a] == family[b]
            if rng.random() > (0.9 if same else 0.35):
                continue
            denom = self_score[a] + self_score[b]
            if same and rng.random() < 0.12:
                # identical pair: reciprocal hits equal the self scores
                bits.append((a, b, self_score[a]))
                bits.append((b, a, self_score[b]))
                continue
            target = rng.uniform(0.45, 0.95) if same else rng.uniform(0.02, 0.45)
            total = target * denom
            share = rng.uniform(0.45, 0.55)
            bits.append((a, b, round(total * share, 1)))
            if rng.random() < 0.04:
                continue  # one direction missing
            bits.append((b, a, round(total * (1 - share), 1)))
    # duplicate line; max wins
    a, b, s = bits[len(bits) // 2]
    bits.append((a, b, max(0.0, round(s - 5.0, 1))))
    rng.shuffle(bits)
    bits_txt = "\n".join("%s\t%s\t%.1f" % t for t in bits) + "\n"
    return "\n".join(obo), "\n".join(ann) + "\n", bits_txt


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
    out.mkdir(parents=True, exist_ok=True)
    (out / "go_subset.obo").write_text(go_subset(random.Random(2011)))
    obo, ann, bits = synthetic(random.Random(50))
    (out / "synthetic.obo").write_text(obo)
    (out / "synthetic_annotations.tsv").write_text(ann)
    (out / "synthetic_bitscores.tsv").write_text(bits)


if __name__ == "__main__":
    main()
