#!/usr/bin/env python3
"""Convert a HybridQA split into the hqa dataset format.

Usage:
    convert_hybridqa.py --questions dev.json --tables WikiTables-WithLinks \
        --out data/hybridqa_dev.json

--tables points at the WikiTables-WithLinks checkout, which holds
tables_tok/<table_id>.json and request_tok/<table_id>.json.

The answer type comes from the "answer-node" list: any node from the table
makes the question in_table, nodes only from passages make it in_passage,
and no nodes at all (computed answers) leave it null.
"""

import argparse
import json
import re
import sys
from pathlib import Path

_PUNCT = re.compile(r"[.,!?;:'\"()\[\]{}]")


def normalizes_empty(text: str) -> bool:
    tokens = _PUNCT.sub("", text.lower()).split()
    return all(t in ("a", "an", "the") for t in tokens)


def answer_type(nodes):
    if not nodes:
        return None
    if any(n[-1] == "table" for n in nodes):
        return "in_table"
    return "in_passage"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--questions", required=True, type=Path)
    ap.add_argument("--tables", required=True, type=Path)
    ap.add_argument("--out", required=True, type=Path)
    args = ap.parse_args()

    questions = json.loads(args.questions.read_text(encoding="utf-8"))
    tables, passages, out_questions = {}, {}, []
    skipped = 0

    for q in questions:
        tid = q["table_id"]
        if tid not in tables:
            table = json.loads((args.tables / "tables_tok" / f"{tid}.json").read_text(encoding="utf-8"))
            links = json.loads((args.tables / "request_tok" / f"{tid}.json").read_text(encoding="utf-8"))
            for pid, text in links.items():
                if text.strip():
                    passages.setdefault(pid, text)
            rows = [
                [{"value": value, "links": [l for l in cell_links if l in passages]} for value, cell_links in row]
                for row in table["data"]
            ]
            tables[tid] = {"id": tid, "headers": [h[0] for h in table["header"]], "rows": rows}
        if normalizes_empty(q["answer-text"]):
            skipped += 1
            continue
        out_questions.append(
            {
                "id": q["question_id"],
                "table_id": tid,
                "question": q["question"],
                "answers": [q["answer-text"]],
                "answer_type": answer_type(q.get("answer-node", [])),
            }
        )

    dataset = {
        "tables": list(tables.values()),
        "passages": dict(sorted(passages.items())),
        "questions": out_questions,
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(dataset, ensure_ascii=False), encoding="utf-8")
    print(f"tables {len(tables)} passages {len(passages)} questions {len(out_questions)} skipped {skipped}",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
