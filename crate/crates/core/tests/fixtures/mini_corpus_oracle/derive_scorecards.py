"""Recomputes the expected scorecards of the mini corpus from the audited
violation list with plain fraction arithmetic."""
import csv
import json
from collections import defaultdict
from fractions import Fraction

DESIGN = {"modularity", "encapsulation", "hierarchy", "abstraction"}

manifest = json.load(open("../mini_corpus/corpus.json"))["tasks"]
counts = defaultdict(lambda: defaultdict(int))  # (subject, task) -> category -> n
for row in csv.DictReader(open("violations.csv")):
    cat = "design" if row["smell_type"] in DESIGN else "implementation"
    counts[(row["subject"], row["task_id"])][cat] += 1
failed = {(r["subject"], r["task_id"]) for r in csv.DictReader(open("failures.csv"))}


def subsets(scenario):
    if scenario == "all":
        return {"all": [t["task_id"] for t in manifest]}
    out = defaultdict(list)
    for t in manifest:
        if scenario == "topic":
            out[t["topic"]].append(t["task_id"])
        elif scenario == "source":
            out[t["source"]].append(t["task_id"])
        elif scenario == "complexity:cyclomatic":
            out[str(t["complexity"]["cyclomatic"])].append(t["task_id"])
        elif scenario == "complexity:loc":
            lo = t["complexity"]["loc"] // 10 * 10
            out[f"{lo}-{lo + 9}"].append(t["task_id"])
        elif scenario == "correctness:m1":
            flag = t["solutions"][0].get("correct")
            if flag is not None:
                out["correct" if flag else "incorrect"].append(t["task_id"])
    return out


def vs(subject, tasks, ruleset):
    analyzed = [t for t in tasks if (subject, t) not in failed]
    total = sum(
        n for t in analyzed for cat, n in counts[(subject, t)].items() if ruleset in ("all", cat)
    )
    return len(analyzed), total, (Fraction(total, len(analyzed)) if analyzed else None)


w = csv.writer(open("scorecards.csv", "w", newline=""), lineterminator="\n")
w.writerow(["scenario", "ruleset", "subset", "subject", "n_tasks", "n_analyzed", "n_failed", "total_violations", "vs", "baseline_vs", "increase_rate"])
for scenario in ["all", "topic", "source", "complexity:cyclomatic", "complexity:loc", "correctness:m1"]:
    for ruleset in ["all", "implementation", "design"]:
        for label, tasks in subsets(scenario).items():
            _, _, base = vs("baseline", tasks, ruleset)
            for subject in ["baseline", "m1"]:
                n, total, v = vs(subject, tasks, ruleset)
                inc = (v - base) / base if v is not None and base else None
                fmt = lambda x: "" if x is None else str(x)
                w.writerow([scenario, ruleset, label, subject, len(tasks), n, len(tasks) - n, total, fmt(v), fmt(base), fmt(inc)])
