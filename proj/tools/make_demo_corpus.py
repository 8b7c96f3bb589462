#!/usr/bin/env python3
# Copyright 2026 The semalloc Authors
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

"""Writes the corpus-mode demo: a category corpus, precomputed embeddings and
a problem file whose similarity tensor comes out equal (to rounding) to the
explicit tensor in singapore_demo.json.

Usage: tools/make_demo_corpus.py [data_dir]
"""

import csv
import json
import math
import os
import sys

DIM = 6
VEHICLES = "vehicles on the road"
BUSES = "buses and traffic lights"

# Target (vehicles, buses) average similarity per device.
TARGETS = [(0.72, 0.793), (0.697, 0.661), (0.83, 0.57)]

CATEGORIES = [
    ["car turning at junction", "taxi in left lane", "pedestrian crossing"],
    ["motorcycle at red light", "van near kerb", "cyclist on shoulder"],
    ["sedan on expressway", "lorry overtaking", "road works sign"],
]


def unit(v):
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def axis(k, scale=1.0):
    v = [0.0] * DIM
    v[k] = scale
    return v


def add(a, b):
    return [x + y for x, y in zip(a, b)]


def main():
    data_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "data")
    a = axis(0)
    b = [0.5, math.sqrt(3.0) / 2.0] + [0.0] * (DIM - 2)
    embeddings = {VEHICLES: a, BUSES: b}
    rows = []
    for device, ((sv, sb), names) in enumerate(zip(TARGETS, CATEGORIES)):
        # Mean direction m with a.m = sv and b.m = sb. Each category is m plus
        # an in-plane offset (which averages out over equal counts) plus an
        # out-of-plane component that brings it to unit length; the interests
        # have no out-of-plane part, so that component never changes a match.
        m = [sv, (sb - 0.5 * sv) / (math.sqrt(3.0) / 2.0)] + [0.0] * (DIM - 2)
        d = [0.02, -0.03] + [0.0] * (DIM - 2)
        parts = [(add(m, d), 2, 2), (add(m, [-x for x in d]), 2, 3), (m, 1, 4 + device % 2)]
        for (v, count, out_axis), name in zip(parts, names):
            rest = 1.0 - sum(x * x for x in v)
            vec = add(v, axis(out_axis, math.sqrt(rest)))
            embeddings[name] = unit(vec)
            rows.append((device, name, count))

    with open(os.path.join(data_dir, "demo_embeddings.json"), "w") as f:
        json.dump(embeddings, f, indent=2)
        f.write("\n")
    with open(os.path.join(data_dir, "demo_corpus.csv"), "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["device_id", "category", "count"])
        writer.writerows(rows)

    with open(os.path.join(data_dir, "singapore_demo.json")) as f:
        problem = json.load(f)
    del problem["similarity"]
    problem["interests"] = {"vehicles": VEHICLES, "buses": BUSES}
    problem["similarity"] = {"corpus": "demo_corpus.csv",
                             "embeddings": "demo_embeddings.json"}
    with open(os.path.join(data_dir, "singapore_corpus.json"), "w") as f:
        json.dump(problem, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
