"""Console script for wrtkernel."""
import argparse
import itertools
import logging
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .batchrun import Launcher
from .cyclo import Group, RootSpec
from .errors import FalsificationError, WrtKernelError
from .gausssum import RootOfUnity, gauss_reduce
from .jones import SurgeryPresentation, lens, presentation_blocks
from .linkpair import e0_trading_pairs, find_isomorphism, stabilized_diagonal
from .misc import SCHEMA, get_hash, json_dump, json_dumps, json_load, set_seed
from .suites import ALIASES, SUITES, build_tasks
from .wrt import lens_closed_form, tau

logger = logging.getLogger("wrtkernel.cli")

VERBS = ("tau", "lens", "gauss", "verify", "pairing", "blocks")
EXIT_PASS, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2
TRADING_ACTIONS = ("verify-e339", "verify-trading")


@dataclass
class RunConfig:
    verb: str
    group: Optional[str] = None
    r: Optional[int] = None
    u: Optional[int] = None
    pres: Optional[str] = None
    suite: Optional[str] = None
    rmax: Optional[int] = None
    jobs: int = 1
    output: Optional[str] = None
    seed: int = 42
    action: Optional[str] = None
    b: Optional[int] = None
    a: int = 1
    color: Optional[int] = None
    k: int = 1
    s: int = 1
    depth: Optional[int] = None
    input: Optional[str] = None

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        for name in ("r", "rmax"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"--{name} must be positive, got {value}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        known = set(cls.__dataclass_fields__)
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def root(self) -> RootSpec:
        if self.r is None:
            raise ValueError(f"{self.verb} needs --r")
        return RootSpec(self.r, self.u, Group(self.group or Group.SU2.value))


def _report(verb: str, instances: List[dict]) -> dict:
    instances = sorted(instances, key=lambda item: item["key"])
    return {"schema": SCHEMA, "verb": verb, "instances": instances,
            "pass": all(item["pass"] for item in instances)}


def _instance(key: str, payload: dict) -> dict:
    return {"key": key, "pass": True, "digest": get_hash(json_dumps(payload)), "falsified": None, "error": None,
            "result": payload}


def _load_presentation(path: Optional[str]) -> SurgeryPresentation:
    if path is None:
        return SurgeryPresentation()
    return SurgeryPresentation.from_json(json_load(path))


def run_tau(config: RunConfig) -> List[dict]:
    spec = config.root()
    pres = _load_presentation(config.pres)
    return [_instance(f"tau:{spec}", tau(spec, pres).to_json())]


def run_lens(config: RunConfig) -> List[dict]:
    """tau of L(b, a) for a = +-1, every group, with the SO(3) Gauss-sum form where it applies."""
    if config.r is None or config.b is None or config.a not in (1, -1):
        raise ValueError("lens needs --r, --b and --a in {1, -1}")
    b = config.a * config.b
    pres = lens(b, config.color)
    groups = [Group(config.group)] if config.group else [Group.SU2, Group.SO3]
    out = []
    for group in groups:
        if group is Group.SO3 and config.r % 2 == 0:
            continue
        spec = RootSpec(config.r, config.u, group)
        result = tau(spec, pres)
        payload = result.to_json()
        if group is Group.SO3 and config.color is None and b and math.gcd(b, config.r) == 1:
            if lens_closed_form(b, spec) != result.value:
                raise FalsificationError(f"tau of L({config.b}, {config.a}) differs from its Gauss-sum form")
            payload["certificates"].append("gauss-sum")
        out.append(_instance(f"lens:{spec},b={b}", payload))
    return out


def run_gauss(config: RunConfig) -> List[dict]:
    spec = config.root()
    xi = RootOfUnity.xi(spec)
    return [_instance(f"gauss:{spec},b={b},d={d}", {"b": b, "d": d, "value": gauss_reduce(b, d, xi).to_json()})
            for b, d in itertools.product(range(spec.r), repeat=2)]


def run_verify(config: RunConfig) -> List[dict]:
    set_seed(config.seed)
    tasks = build_tasks(config.suite, config.rmax, config.group, config.seed)
    results = Launcher(config.jobs).run(tasks)
    return [result.to_json() for result in results]


def run_pairing(config: RunConfig) -> List[dict]:
    if config.action in TRADING_ACTIONS:
        lhs, rhs = e0_trading_pairs(config.k)
        witness = find_isomorphism(lhs, rhs)
        if witness is None:
            raise FalsificationError(f"E_0^{config.k} + phi(-2^{config.k}) has no diagonal counterpart")
        return [_instance(f"pairing:k={config.k}", {"k": config.k, "lhs": lhs.to_json(), "rhs": rhs.to_json(),
                                                    "witness": [list(w) for w in witness]})]
    if config.input is None:
        raise ValueError("pairing diagonalize needs --in")
    data = json_load(config.input)
    result = stabilized_diagonal(data.get("phi", []), data.get("e0", []), config.s, data.get("enhancement", []))
    if result.verified is False:
        raise FalsificationError("stabilized diagonal is not isomorphic to its block sum")
    payload = {"entries": list(result.entries), "framings": list(result.framings), "verified": result.verified,
               "presentation": result.presentation().to_json()}
    return [_instance(f"pairing:diagonalize,s={config.s}", payload)]


def run_blocks(config: RunConfig) -> List[dict]:
    pres = _load_presentation(config.pres)
    depth = config.depth if config.depth is not None else 3
    blocks = presentation_blocks(pres, depth)
    payload = {"eps": list(blocks.eps), "depth": depth,
               "coefficients": {",".join(map(str, k)): str(c) for k, c in blocks.items()}}
    return [_instance(f"blocks:K={depth}", payload)]


RUNNERS = {"tau": run_tau, "lens": run_lens, "gauss": run_gauss, "verify": run_verify,
           "pairing": run_pairing, "blocks": run_blocks}


def run(config: RunConfig) -> Tuple[int, dict]:
    """Execute one verb; the exit status is 1 on any falsification, 2 on bad input."""
    try:
        instances = RUNNERS[config.verb](config)
    except FalsificationError as err:
        logger.error("falsified: %s", err)
        return EXIT_FALSIFIED, _report(config.verb, [{"key": config.verb, "pass": False, "digest": None,
                                                      "falsified": str(err), "error": None}])
    except (WrtKernelError, KeyError, ValueError, OSError) as err:
        logger.error("%s: %s", type(err).__name__, err)
        return EXIT_INPUT, _report(config.verb, [{"key": config.verb, "pass": False, "digest": None,
                                                  "falsified": None, "error": f"{type(err).__name__}: {err}"}])
    report = _report(config.verb, instances)
    if any(item.get("falsified") for item in instances):
        return EXIT_FALSIFIED, report
    if any(item.get("error") for item in instances):
        return EXIT_INPUT, report
    return EXIT_PASS, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=[g.value for g in Group])
    common.add_argument("--r", type=int)
    common.add_argument("--u", type=int, help="exponent of xi^(1/4) = zeta_t^u; default: smallest admissible")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", "-o", type=str, help="report path; stdout when omitted")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="wrtkernel", description="Exact WRT invariants and their checks.")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("tau", parents=[common])
    p.add_argument("--pres", type=str, help="presentation JSON; S^3 when omitted")
    p = sub.add_parser("lens", parents=[common])
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--color", type=int)
    sub.add_parser("gauss", parents=[common])
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=sorted(SUITES) + sorted(ALIASES))
    p.add_argument("--rmax", "--nmax", type=int, help="upper end of the suite range (r, k or n)")
    p = sub.add_parser("pairing", parents=[common])
    p.add_argument("action", choices=sorted(TRADING_ACTIONS) + ["diagonalize"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--in", dest="input", type=str)
    p = sub.add_parser("blocks", parents=[common])
    p.add_argument("--pres", type=str)
    p.add_argument("--depth", type=int)
    return parser


def main(argv=None):
    """Console script for wrtkernel."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(format="%(asctime)s %(levelname)-8s %(message)s",
                        level=logging.DEBUG if args.verbose else logging.INFO, datefmt="%Y-%m-%d %H:%M:%S")
    try:
        config = RunConfig.from_args(args)
    except ValueError as err:
        logger.error("%s", err)
        return EXIT_INPUT
    status, report = run(config)
    json_dump(report, config.output)
    return status


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
