#!/usr/bin/env python3
"""Regenerates breast-cancer-wisconsin.synthetic.data.

The real UCI file (breast-cancer-wisconsin.data) is not redistributable
with this repository, so the tests ship a synthetic stand-in that keeps
the exact schema and summary statistics: 699 rows of
id,9 attributes in 1..10,class 2|4; 458 benign / 241 malignant; 16 rows
with a missing bare-nuclei value ('?' in column 7), 14 of them benign.
Attribute values are clipped rounded normals matching the real file's
class-conditional means and standard deviations, so classifiers behave
comparably. Deterministic: fixed seed, stable output.
"""

import random
import statistics

SEED = 20240614
ROWS_BENIGN = 458
ROWS_MALIGNANT = 241
MISSING_BENIGN = 14
MISSING_MALIGNANT = 2

MEAN = {
    2: [2.96, 1.33, 1.44, 1.36, 2.12, 1.35, 2.10, 1.29, 1.06],
    4: [7.19, 6.57, 6.56, 5.55, 5.30, 7.63, 5.98, 5.86, 2.59],
}
SD = {
    2: [1.67, 0.91, 1.00, 0.92, 0.92, 1.18, 1.08, 1.06, 0.50],
    4: [2.43, 2.72, 2.57, 3.21, 2.45, 3.12, 2.27, 3.35, 2.56],
}


def draw_row(rng, label):
    return [min(10, max(1, round(rng.gauss(m, s))))
            for m, s in zip(MEAN[label], SD[label])]


def main():
    rng = random.Random(SEED)
    rows = [(2, draw_row(rng, 2)) for _ in range(ROWS_BENIGN)]
    rows += [(4, draw_row(rng, 4)) for _ in range(ROWS_MALIGNANT)]
    rng.shuffle(rows)

    benign_idx = [i for i, (label, _) in enumerate(rows) if label == 2]
    malignant_idx = [i for i, (label, _) in enumerate(rows) if label == 4]
    missing = set(rng.sample(benign_idx, MISSING_BENIGN))
    missing |= set(rng.sample(malignant_idx, MISSING_MALIGNANT))

    lines = []
    sample_id = 1000025
    for i, (label, attrs) in enumerate(rows):
        fields = [str(v) for v in attrs]
        if i in missing:
            fields[6] = "?"
        lines.append(f"{sample_id},{','.join(fields)},{label}")
        sample_id += rng.randint(1, 5000)

    with open("breast-cancer-wisconsin.synthetic.data", "w") as out:
        out.write("\n".join(lines) + "\n")

    # Sanity check: the complete rows must stay easily separable.
    complete = [(label, attrs) for i, (label, attrs) in enumerate(rows)
                if i not in missing]
    centroid = {
        label: [statistics.mean(a[k] for ell, a in complete if ell == label)
                for k in range(9)]
        for label in (2, 4)
    }
    hits = 0
    for label, attrs in complete:
        d2 = {ell: sum((a - c) ** 2 for a, c in zip(attrs, centroid[ell]))
              for ell in (2, 4)}
        hits += (2 if d2[2] <= d2[4] else 4) == label
    acc = hits / len(complete)
    print(f"rows={len(rows)} complete={len(complete)} "
          f"nearest-centroid accuracy={acc:.4f}")
    assert acc >= 0.95, "synthetic draw lost separability; adjust the seed"


if __name__ == "__main__":
    main()
