"""Batch driver: parse a campaign config, run the requested checks, report.

A campaign is a JSON document naming a Cartan type, a reduced word, the
root-of-unity orders, which checks to run, and how to enumerate mutation
sequences and exponent vectors.  Letters, positions, and words are 1-based
in configs and reports; internally everything is 0-based.

Exit codes: 0 all checks pass, 1 at least one mathematical FAIL, 2 usage
or config error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cluster import (IncompatibleLambdaError, NotCompatibleError,
                      btilde_from_word, check_compatible, mutate_seed,
                      seed_from_word)
from .coeff import ExactDivisionError
from .frobsplit import (TheoremSession, check_split_axioms,
                        random_torus_element, reduction_commutes,
                        require_valid_order)
from .qtorus import NonExactDivision, PrimeField, SkewForm
from .rootdatum import CartanData, cartan_preset, is_reduced
from .uqn import (CheckOutcome, check_frobenius_on_minor, check_minor_power,
                  commutation_matrix)

KNOWN_CHECKS = ("LAMBDA", "THEOREM", "BASE_CASE", "KKKO", "SPLIT_AXIOMS", "REDUCTION")

_VECTOR_CAP = 200_000

# Recorded with every report: why torus-level equality of the exponent maps
# decides the identity for cluster monomials, including ones with frozen
# denominators.
EXTENSION_NOTE = (
    "exponent maps act on all torus monomials, negative exponents included; "
    "on a cluster monomial this agrees with the maps defined on nonnegative "
    "coordinates after clearing frozen denominators via the projection "
    "formula, and the v=1 torus has no zero divisors, so torus equality is "
    "equivalent to the cluster-level identity")


class CampaignError(ValueError):
    """Config rejected; message carries the offending field."""


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)


def exchangeable_positions(word) -> tuple:
    return tuple(t for t in range(len(word)) if word[t] in word[t + 1:])


def enumerate_mutation_sequences(positions, depth: int, *, prune=True):
    """All mutation sequences up to the given length, skipping immediate
    repeats unless pruning is off (mutation at one position is involutive,
    which is tested separately)."""
    out = [()]
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for seq in frontier:
            for pos in positions:
                if prune and seq and seq[-1] == pos:
                    continue
                nxt.append(seq + (pos,))
        out.extend(nxt)
        frontier = nxt
    return out


@dataclass
class Campaign:
    label: str
    datum: CartanData
    word: tuple
    l_values: tuple
    sequences: tuple
    vectors: tuple
    checks: tuple
    lam_config: tuple | None
    reduction_prefix: int
    trials: int
    rng_seed: int

    @classmethod
    def from_dict(cls, doc: dict) -> "Campaign":
        if not isinstance(doc, dict):
            raise CampaignError("config root must be an object")
        known = {"cartan", "word", "l_values", "mutations", "exponents",
                 "checks", "lambda", "reduction_prefix", "trials", "rng_seed"}
        for key in doc:
            if key not in known:
                raise CampaignError(f"unknown field {key!r}")

        cartan = doc.get("cartan")
        if isinstance(cartan, str):
            label = cartan
            try:
                datum = cartan_preset(cartan)
            except ValueError:
                raise CampaignError(f"cartan: unknown preset {cartan!r}") from None
        elif isinstance(cartan, dict):
            label = "custom"
            try:
                datum = CartanData(cartan["matrix"], cartan["sym"])
            except (KeyError, ValueError, TypeError) as exc:
                raise CampaignError(f"cartan: {exc}") from None
        else:
            raise CampaignError("cartan: preset name or {matrix, sym} required")

        raw_word = doc.get("word")
        if (not isinstance(raw_word, list) or not raw_word
                or not all(isinstance(i, int) and 1 <= i <= datum.n for i in raw_word)):
            raise CampaignError(f"word: expected letters in 1..{datum.n}")
        word = tuple(i - 1 for i in raw_word)
        if not is_reduced(datum, word):
            raise CampaignError("word: word not reduced")

        raw_l = doc.get("l_values", [])
        if not isinstance(raw_l, list) or not all(isinstance(l, int) for l in raw_l):
            raise CampaignError("l_values: expected a list of integers")
        for l in raw_l:
            if l % 2 == 0:
                raise CampaignError(f"l_values: l must be odd, got {l}")
            try:
                require_valid_order(datum, l)
            except ValueError as exc:
                raise CampaignError(f"l_values: {exc}") from None

        positions = exchangeable_positions(word)
        mut = doc.get("mutations", {"depth": 0})
        if not isinstance(mut, dict):
            raise CampaignError("mutations: expected an object")
        if "sequences" in mut:
            sequences = []
            for seq in mut["sequences"]:
                if not all(isinstance(k, int) and 1 <= k <= len(word) for k in seq):
                    raise CampaignError(f"mutations: bad position in {seq}")
                zeroed = tuple(k - 1 for k in seq)
                for k in zeroed:
                    if k not in positions:
                        raise CampaignError(
                            f"mutations: position {k + 1} is not exchangeable")
                sequences.append(zeroed)
            sequences = tuple(sequences)
        else:
            depth = mut.get("depth", 0)
            if not isinstance(depth, int) or depth < 0:
                raise CampaignError("mutations: depth must be a nonnegative integer")
            sequences = tuple(enumerate_mutation_sequences(
                positions, depth, prune=not mut.get("no_prune", False)))

        exp = doc.get("exponents", {"max_entry": 0})
        if not isinstance(exp, dict):
            raise CampaignError("exponents: expected an object")
        if "vectors" in exp:
            vectors = []
            for vec in exp["vectors"]:
                if (len(vec) != len(word)
                        or not all(isinstance(x, int) and x >= 0 for x in vec)):
                    raise CampaignError(f"exponents: bad vector {vec}")
                vectors.append(tuple(vec))
            vectors = tuple(vectors)
        else:
            top = exp.get("max_entry", 0)
            if not isinstance(top, int) or top < 0:
                raise CampaignError("exponents: max_entry must be a nonnegative integer")
            if (top + 1) ** len(word) > _VECTOR_CAP:
                raise CampaignError(
                    f"exponents: box has more than {_VECTOR_CAP} vectors")
            vectors = tuple(itertools.product(range(top + 1), repeat=len(word)))

        checks = tuple(doc.get("checks", list(KNOWN_CHECKS)))
        for name in checks:
            if name not in KNOWN_CHECKS:
                raise CampaignError(f"checks: unknown check {name!r}")

        lam_config = doc.get("lambda")
        if lam_config is not None:
            try:
                lam_config = tuple(tuple(int(x) for x in row) for row in lam_config)
                SkewForm(lam_config)
            except (ValueError, TypeError) as exc:
                raise CampaignError(f"lambda: {exc}") from None
            if len(lam_config) != len(word):
                raise CampaignError("lambda: size does not match the word")

        prefix = doc.get("reduction_prefix", max(1, len(word) // 2))
        if not isinstance(prefix, int) or not 1 <= prefix <= len(word):
            raise CampaignError("reduction_prefix: out of range")

        trials = doc.get("trials", 200)
        if not isinstance(trials, int) or trials < 1:
            raise CampaignError("trials: must be a positive integer")
        rng_seed = doc.get("rng_seed", 0)
        if not isinstance(rng_seed, int):
            raise CampaignError("rng_seed: must be an integer")

        return cls(label, datum, word, tuple(raw_l), sequences, vectors,
                   checks, lam_config, prefix, trials, rng_seed)


# -- check execution -------------------------------------------------------

def _record(name, params, outcome, millis):
    rec = {"name": name, "params": _jsonable(params),
           "verdict": "PASS" if outcome.passed else "FAIL",
           "checked": outcome.checked, "millis": millis}
    if outcome.witness is not None:
        rec["witness"] = _jsonable(outcome.witness)
    if outcome.note:
        rec["note"] = outcome.note
    return rec


def _describe_datum(campaign: Campaign):
    if campaign.label == "custom":
        return ("custom", campaign.datum.matrix, campaign.datum.sym)
    return ("preset", campaign.label)


def _datum_from(desc) -> CartanData:
    if desc[0] == "preset":
        return cartan_preset(desc[1])
    return CartanData(desc[1], desc[2])


def _theorem_batch(payload):
    """One (l, mutation sequence) theorem batch; module-level so a process
    pool can run batches in parallel.

    TODO: pass pickled seeds instead of replaying the mutation sequence in
    every worker; needs reduce hooks on TorusElement first.
    """
    desc, word, lam, seq, l, vectors = payload
    t0 = time.perf_counter()
    params = {"l": l, "mutations": [k + 1 for k in seq], "exponents": len(vectors)}
    try:
        seed = seed_from_word(_datum_from(desc), word, SkewForm(lam))
        for pos in seq:
            seed = mutate_seed(seed, pos)
        session = TheoremSession(seed, l)
        checked = 0
        out = CheckOutcome("theorem", True, 0)
        for a in vectors:
            step = session.check(a)
            checked += step.checked
            if not step.passed:
                out = CheckOutcome("theorem", False, checked, step.witness, step.note)
                break
        else:
            out = CheckOutcome("theorem", True, checked)
    except (NonExactDivision, ExactDivisionError, NotCompatibleError,
            IncompatibleLambdaError) as exc:
        out = CheckOutcome("theorem", False, 0, note=f"engine error: {exc}")
    millis = int((time.perf_counter() - t0) * 1000)
    return _record("theorem", params, out, millis)


def _resolve_lambda(campaign: Campaign):
    """The commutation form the seeds will use, its provenance, and the
    oracle outcome when the LAMBDA check is requested."""
    outcome = None
    computed = None
    if "LAMBDA" in campaign.checks or campaign.lam_config is None:
        computed = commutation_matrix(campaign.datum, campaign.word)
    if "LAMBDA" in campaign.checks:
        try:
            bt = btilde_from_word(campaign.datum, campaign.word)
            d = check_compatible(bt, SkewForm(computed))
            want = tuple(2 * campaign.datum.sym[campaign.word[k]] for k in bt.cols)
            if d != want:
                outcome = CheckOutcome("lambda-oracle", False, 1,
                                       witness={"d": list(d), "expected": list(want)})
            elif campaign.lam_config is not None and campaign.lam_config != computed:
                outcome = CheckOutcome("lambda-oracle", False, 2,
                                       witness={"computed": _jsonable(computed),
                                                "config": _jsonable(campaign.lam_config)})
            else:
                outcome = CheckOutcome("lambda-oracle", True, 2)
        except NotCompatibleError as exc:
            outcome = CheckOutcome("lambda-oracle", False, 1, note=str(exc))
    lam = campaign.lam_config if campaign.lam_config is not None else computed
    source = "config" if campaign.lam_config is not None else "computed"
    return lam, source, outcome


def run(campaign: Campaign, jobs: int = 1) -> dict:
    records = []
    needs_lambda = bool({"LAMBDA", "THEOREM", "SPLIT_AXIOMS", "REDUCTION"}
                        & set(campaign.checks))
    lam = source = None
    if needs_lambda:
        t0 = time.perf_counter()
        lam, source, lam_outcome = _resolve_lambda(campaign)
        millis = int((time.perf_counter() - t0) * 1000)
        if lam_outcome is not None:
            records.append(_record("lambda-oracle",
                                   {"word": [i + 1 for i in campaign.word]},
                                   lam_outcome, millis))

    if "THEOREM" in campaign.checks:
        payloads = [(_describe_datum(campaign), campaign.word, lam, seq, l,
                     campaign.vectors)
                    for l in campaign.l_values for seq in campaign.sequences]
        if jobs > 1 and len(payloads) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                records.extend(pool.map(_theorem_batch, payloads))
        else:
            records.extend(_theorem_batch(p) for p in payloads)

    if "BASE_CASE" in campaign.checks:
        for l in campaign.l_values:
            for t in range(len(campaign.word)):
                t0 = time.perf_counter()
                out = check_frobenius_on_minor(campaign.datum, campaign.word, t, l)
                millis = int((time.perf_counter() - t0) * 1000)
                records.append(_record("minor-base-case",
                                       {"position": t + 1, "l": l}, out, millis))

    if "KKKO" in campaign.checks:
        for l in campaign.l_values:
            for t in range(len(campaign.word)):
                t0 = time.perf_counter()
                out = check_minor_power(campaign.datum, campaign.word, t, l)
                millis = int((time.perf_counter() - t0) * 1000)
                records.append(_record("minor-power",
                                       {"position": t + 1, "l": l}, out, millis))

    primes = [l for l in campaign.l_values if _is_prime(l)]

    if "SPLIT_AXIOMS" in campaign.checks:
        for p in primes:
            rng = random.Random(f"{campaign.rng_seed}:split:{p}")
            t0 = time.perf_counter()
            out = check_split_axioms(SkewForm(lam), p, rng, campaign.trials)
            millis = int((time.perf_counter() - t0) * 1000)
            records.append(_record("splitting-axioms",
                                   {"p": p, "trials": campaign.trials}, out, millis))

    if "REDUCTION" in campaign.checks:
        prefix = campaign.reduction_prefix
        block = SkewForm([[lam[i][j] for j in range(prefix)] for i in range(prefix)])
        for p in primes:
            rng = random.Random(f"{campaign.rng_seed}:reduction:{p}")
            ring = PrimeField(p)
            elems = [random_torus_element(rng, ring, block, nterms=5)
                     for _ in range(campaign.trials)]
            t0 = time.perf_counter()
            out = reduction_commutes(campaign.datum, campaign.word, prefix, elems)
            millis = int((time.perf_counter() - t0) * 1000)
            records.append(_record("splitting-reduction",
                                   {"p": p, "prefix": prefix,
                                    "samples": campaign.trials}, out, millis))

    meta = {"type": campaign.label,
            "word": [i + 1 for i in campaign.word],
            "lambda": _jsonable(lam),
            "lambda_source": source if lam is not None else "none",
            "orders": list(campaign.l_values),
            "note": EXTENSION_NOTE}
    return {"meta": meta, "checks": records}


# -- report emission -------------------------------------------------------

def emit(report: dict, fmt: str, *, deterministic=False) -> str:
    if deterministic:
        report = json.loads(json.dumps(report))
        for rec in report["checks"]:
            rec["millis"] = 0
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"

    lines = []
    meta = report["meta"]
    lines.append(f"type {meta['type']}  word {meta['word']}  "
                 f"lambda from {meta['lambda_source']}")
    header = f"{'check':24} {'params':40} {'verdict':8} {'millis':>7}"
    lines.append(header)
    lines.append("-" * len(header))
    for rec in report["checks"]:
        params = ", ".join(f"{k}={v}" for k, v in rec["params"].items())
        lines.append(f"{rec['name']:24} {params:40} {rec['verdict']:8} "
                     f"{rec['millis']:>7}")
        if "witness" in rec:
            lines.append(f"    witness: {json.dumps(rec['witness'], sort_keys=True)}")
        if "note" in rec:
            lines.append(f"    note: {rec['note']}")
    total = len(report["checks"])
    fails = sum(1 for rec in report["checks"] if rec["verdict"] == "FAIL")
    lines.append(f"{total} checks, {fails} failed")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qcfrob",
        description="Verify root-of-unity identities for quantum cluster "
                    "algebras on unipotent cells.")
    parser.add_argument("--config", required=True, help="campaign JSON file")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--deterministic", action="store_true",
                        help="zero out timing fields")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for theorem batches")
    parser.add_argument("--out", help="write the report here instead of stdout; "
                        "QCFROB_OUT_DIR prefixes relative paths")
    args = parser.parse_args(argv)

    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        with open(args.config) as fh:
            doc = json.load(fh)
        campaign = Campaign.from_dict(doc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return 2
    except CampaignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report = run(campaign, jobs=args.jobs)
    text = emit(report, args.format, deterministic=args.deterministic)

    if args.out:
        path = args.out
        env_dir = os.environ.get("QCFROB_OUT_DIR")
        if env_dir and not os.path.isabs(path):
            path = os.path.join(env_dir, path)
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    failed = any(rec["verdict"] == "FAIL" for rec in report["checks"])
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
