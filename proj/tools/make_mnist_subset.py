#!/usr/bin/env python3
# Copyright 2026 The anovqc Authors
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
"""Rebuild data/mnist-subset from the 5000-digit MNIST sample in the mlxtend wheel.

The mlxtend CSV (mnist_5k.csv.gz) holds 500 digits per class, sorted by label.
Every fifth row goes to the t10k files and the rest to train, so both splits
cover all ten classes (4000 / 1000). Output is gzip with mtime 0 so reruns are
byte-identical.

    pip download mlxtend==0.24.0 --no-deps -d /tmp/mlx
    python3 tools/make_mnist_subset.py /tmp/mlx/mlxtend-0.24.0-py3-none-any.whl data/mnist-subset
"""

import argparse
import gzip
import pathlib
import struct
import zipfile

CSV_MEMBER = "mlxtend/data/data/mnist_5k.csv.gz"


def write_idx(out_dir, prefix, rows):
    images = struct.pack(">IIII", 0x803, len(rows), 28, 28)
    images += bytes(v for r in rows for v in r[:784])
    labels = struct.pack(">II", 0x801, len(rows)) + bytes(r[784] for r in rows)
    for name, payload in (("images-idx3-ubyte", images), ("labels-idx1-ubyte", labels)):
        path = out_dir / f"{prefix}-{name}.gz"
        with open(path, "wb") as raw, gzip.GzipFile(
            filename="", mode="wb", fileobj=raw, mtime=0
        ) as f:
            f.write(payload)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("wheel", type=pathlib.Path)
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args()

    with zipfile.ZipFile(args.wheel) as z:
        text = gzip.decompress(z.read(CSV_MEMBER)).decode()
    rows = [list(map(int, line.split(","))) for line in text.strip().splitlines()]
    if len(rows) != 5000 or any(len(r) != 785 for r in rows):
        raise SystemExit("unexpected CSV shape")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_idx(args.out_dir, "train", [r for i, r in enumerate(rows) if i % 5 != 4])
    write_idx(args.out_dir, "t10k", [r for i, r in enumerate(rows) if i % 5 == 4])


if __name__ == "__main__":
    main()
