#!/usr/bin/env python3
# Copyright (c) 2026 The WANE Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convert a line-oriented text network into a wane dataset directory.

Input layout (the common citation-network release format):
  graph.txt   one edge per line, two vertex ids separated by whitespace
  data.txt    line k holds the text of vertex k
  group.txt   optional labels: either "vertex label" per line or one label
              per line in vertex order

Output: edges.tsv, text.tsv and (if labels were given) labels.tsv.
"""

import argparse
import pathlib
import sys


def read_edges(path):
    edges, seen = [], set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) < 2:
            sys.exit(f"{path}:{lineno}: expected two vertex ids")
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    return edges


def read_labels(path, n):
    lines = [l.split() for l in path.read_text(encoding="utf-8").splitlines() if l.strip()]
    if all(len(f) >= 2 for f in lines):
        labels = {int(f[0]): f[1] for f in lines}
    else:
        labels = {k: f[0] for k, f in enumerate(lines)}
    missing = [v for v in range(n) if v not in labels]
    if missing:
        sys.exit(f"{path}: {len(missing)} vertices without a label (first: {missing[0]})")
    return labels


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("src", type=pathlib.Path)
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--graph", default="graph.txt")
    ap.add_argument("--text", default="data.txt")
    ap.add_argument("--labels", default="group.txt")
    args = ap.parse_args()

    texts = (args.src / args.text).read_text(encoding="utf-8").splitlines()
    edges = read_edges(args.src / args.graph)
    n = len(texts)
    bad = [e for e in edges if e[1] >= n]
    if bad:
        sys.exit(f"edge {bad[0]} refers to a vertex beyond the {n} texts")

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "text.tsv", "w", encoding="utf-8") as f:
        for k, t in enumerate(texts):
            f.write(f"{k}\t{' '.join(t.split())}\n")
    with open(args.out / "edges.tsv", "w", encoding="utf-8") as f:
        for u, v in edges:
            f.write(f"{u}\t{v}\n")
    label_path = args.src / args.labels
    if label_path.exists():
        labels = read_labels(label_path, n)
        with open(args.out / "labels.tsv", "w", encoding="utf-8") as f:
            for v in range(n):
                f.write(f"{v}\t{labels[v]}\n")
    print(f"{n} vertices, {len(edges)} edges -> {args.out}")


if __name__ == "__main__":
    main()
