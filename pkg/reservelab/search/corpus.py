import csv
import hashlib
import json
import logging
import os
from collections import Counter, OrderedDict
from typing import Iterable, List

from fvcore.common.file_io import PathManager
from tabulate import tabulate

from reservelab.data import dump_witness, instance_to_dict

__all__ = ["INDEX_FILE", "instance_hash", "write_witnesses", "read_index", "summarize_index"]

INDEX_FILE = "index.tsv"

logger = logging.getLogger(__name__)


def instance_hash(inst) -> str:
    payload = json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":"))
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()


def write_witnesses(witnesses: Iterable, output_dir: str) -> List[str]:
    """
    Write every witness to its own JSON file under `output_dir` and list
    them in ``index.tsv`` (kind, instance hash, summary, file).

    Returns:
        list[str]: the witness files, in stream order
    """
    PathManager.mkdirs(output_dir)
    paths = []
    rows = []
    for k, w in enumerate(witnesses):
        digest = instance_hash(w.instance)
        fname = "{:05d}_{}_{}.json".format(k, w.kind, digest[:10])
        path = os.path.join(output_dir, fname)
        dump_witness(w, path)
        paths.append(path)
        rows.append((w.kind, digest, w.summary(), fname))

    index = os.path.join(output_dir, INDEX_FILE)
    with PathManager.open(index, "w") as f:
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(("kind", "instance_hash", "summary", "file"))
        writer.writerows(rows)
    logger.info("Wrote {} witnesses to {}".format(len(paths), output_dir))
    return paths


def read_index(path: str) -> List[dict]:
    with PathManager.open(path, "r") as f:
        return list(csv.DictReader(f, delimiter="\t"))


def summarize_index(paths: Iterable[str]) -> str:
    """
    Tabulate witness counts per kind for each run (the directory holding an
    ``index.tsv``), plus the number of distinct instances.
    """
    runs = OrderedDict()
    for path in paths:
        if not path.endswith(INDEX_FILE):
            path = os.path.join(path, INDEX_FILE)
        runs[os.path.dirname(path) or "."] = read_index(path)

    kinds = sorted({row["kind"] for rows in runs.values() for row in rows})
    table = []
    for run, rows in runs.items():
        counts = Counter(row["kind"] for row in rows)
        distinct = len({row["instance_hash"] for row in rows})
        table.append([run] + [counts.get(k, 0) for k in kinds] + [len(rows), distinct])
    return tabulate(
        table,
        tablefmt="pipe",
        headers=["run"] + kinds + ["total", "instances"],
        numalign="left",
    )
