"""Case classification and forward-chaining deduction over computed facts.

Facts are numbers produced by the engines (indices, ambiguous class orders,
class groups, principality verdicts) or explicitly Assumed inputs.  Claims are
produced by case scripts: ordered steps, each applying one structural rule to
named facts and earlier claims, with required fact values.  A claim is
Certified when everything under it is computed and Conditional when an
Assumed fact enters its trace.
"""
import json
from dataclasses import dataclass, field

from .errors import BadCongruence, MissingFact
from .exact_arith import is_prime

INDEX = "IndexComputed"
AMBIGUOUS = "AmbiguousOrder"
CLASS_GROUP = "ClassGroupComputed"
PRINCIPALITY = "Principality"
ASSUMED = "Assumed"
FACT_KINDS = (INDEX, AMBIGUOUS, CLASS_GROUP, PRINCIPALITY, ASSUMED)

CERTIFIED = "Certified"
CONDITIONAL = "Conditional"


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class CaseTag:
    ell: int
    tag: str
    supported: bool = True

    def __str__(self):
        return self.tag if self.supported else "Unsupported(%s)" % self.tag


def cubic_residue_is_trivial(p):
    """True iff 3 is a cube modulo p (p = 1 mod 3)."""
    if p % 3 != 1:
        raise BadCongruence("cubic residue symbol needs p = 1 mod 3, got %d" % p)
    return pow(3, (p - 1) // 3, p) == 1


def classify(p, ell):
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    if ell == 2:
        if p == 2:
            return CaseTag(2, "p=2")
        if p % 8 == 3:
            return CaseTag(2, "3 mod 8")
        if p % 8 == 5:
            return CaseTag(2, "5 mod 8")
        if p % 16 == 7:
            return CaseTag(2, "7 mod 16")
        if p % 16 == 15:
            return CaseTag(2, "15 mod 16", False)
        return CaseTag(2, "1 mod 8", False)
    if ell == 3:
        if p == 3:
            return CaseTag(3, "p=3")
        r = p % 9
        if r in (2, 5):
            return CaseTag(3, "2,5 mod 9")
        if r in (4, 7):
            if cubic_residue_is_trivial(p):
                return CaseTag(3, "4,7 mod 9, symbol = 1", False)
            return CaseTag(3, "4,7 mod 9, symbol != 1")
        return CaseTag(3, "%d mod 9" % r, False)
    raise ValueError("ell must be 2 or 3")


# ---------------------------------------------------------------- facts and claims

def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _from_json(v):
    if isinstance(v, list):
        return tuple(_from_json(x) for x in v)
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    return v


@dataclass(frozen=True)
class Fact:
    kind: str
    key: str
    value: object
    provenance: str

    def __post_init__(self):
        if self.kind not in FACT_KINDS:
            raise ValueError("unknown fact kind %r" % self.kind)

    def to_line(self):
        rec = {"kind": self.kind,
               "payload": {"key": self.key, "value": _jsonable(self.value)},
               "provenance": self.provenance}
        return json.dumps(rec, separators=(",", ":"))

    @classmethod
    def from_line(cls, line):
        rec = json.loads(line)
        return cls(rec["kind"], rec["payload"]["key"], _from_json(rec["payload"]["value"]),
                   rec["provenance"])


def dump_facts(facts):
    return "".join(f.to_line() + "\n" for f in facts)


def load_facts(text):
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            out.append(Fact.from_line(line))
        except (ValueError, KeyError):
            # a torn final line from an interrupted writer
            continue
    return out


@dataclass(frozen=True)
class Rule:
    name: str
    anchor: str
    text: str


RULES = {
    "R1": Rule("R1", "Nakayama descent",
               "ell does not divide |(Cl_K/C)^G| implies Cl_K(ell) = C(ell); with C trivial, "
               "ell does not divide |Cl_K^G| implies ell does not divide h_K"),
    "R2": Rule("R2", "norm surjectivity",
               "if M/K is an ell-extension ramified somewhere, Cl_M -> Cl_K is surjective, "
               "so |A_K| <= |A_M| and A_K is a quotient of A_M"),
    "R3": Rule("R3", "stability",
               "equal ell-class numbers in two consecutive layers of a totally ramified "
               "Z/ell^2 step propagate to all higher layers"),
    "R4": Rule("R4", "tower propagation",
               "if the primes above ell in K_{n0,m0} are totally ramified in K_{n0+1,m0+1} and "
               "|A_{n0,m0}| = |A_{n0+1,m0+1}|, then A_{n,m} = A_{n0,m0} for all (n,m) >= (n0,m0)"),
    "R5": Rule("R5", "total ramification",
               "the primes above ell are totally ramified along the tower step in question"),
    "F1": Rule("F1", "Chevalley formula",
               "|Cl_K^G| = |Cl_F| * prod e_v / ([K:F] [E_F : E_F cap N K^x])"),
    "F2": Rule("F2", "Gras formula",
               "|(Cl_K/C)^G| = |Cl_F|/|N C| * prod e_v / ([K:F] [Lambda_D : Lambda_D cap N K^x])"),
    "G1": Rule("G1", "ambiguous generation",
               "classes of ramified primes are fixed by G; a group generated by them equals its "
               "G-invariants"),
    "X1": Rule("X1", "external input", "a fact taken from the literature, not computed here"),
    "L1": Rule("L1", "Lei growth formula",
               "v_ell(h_{n,m}) = mu_m ell^n + lambda_m n + O(1); bounded ell-parts force mu_m = lambda_m = 0"),
}


@dataclass(frozen=True)
class TraceStep:
    claim: str
    rule: str
    anchor: str
    uses: tuple


@dataclass(frozen=True)
class Claim:
    cid: str
    statement: str
    status: str
    assumptions: tuple
    trace: tuple

    def to_record(self):
        return {"id": self.cid, "statement": self.statement, "status": self.status,
                "assumptions": list(self.assumptions),
                "trace": [{"claim": t.claim, "rule": t.rule, "anchor": t.anchor,
                           "uses": list(t.uses)} for t in self.trace]}


@dataclass(frozen=True)
class Step:
    cid: str
    statement: str
    rule: str
    uses: tuple                    # fact keys and claim ids
    require: tuple = ()            # (fact key, expected value)


# ---------------------------------------------------------------- scripts

def _chev(key):
    return "chevalley[%s]" % key


def _gras(key):
    return "gras[%s]" % key


SCRIPTS = {
    "3 mod 8": (
        Step("c1", "2 does not divide |Cl^G| for K_{2,2}/K_{0,2}", "F1",
             ("h[K_0,2]", "prod_e[K22/K02]", "index[E02:K22/K02]", _chev("K22/K02")),
             ((_chev("K22/K02"), 1),)),
        Step("c2", "h_{2,2} is odd", "R1", ("c1",)),
        Step("c3", "the prime above 2 in K_{1,1} is totally ramified in K_{2,2}", "R5",
             ("totally_ramified[2:K11->K22]",), (("totally_ramified[2:K11->K22]", True),)),
        Step("c4", "h_{n,m} is odd for n, m >= 1", "R4", ("c2", "c3")),
        Step("c5", "h_{n,m} is odd for all n, m >= 0", "R2", ("c4",)),
    ),
    "5 mod 8": (
        Step("g32", "(Cl_{3,2}/C)^G has odd order, C = <cl q_{3,2}>", "F2",
             ("h[K_0,2]", "prod_e[K32/K02]", "index[Lambda02:K32/K02]", _gras("K32/K02")),
             ((_gras("K32/K02"), 1),)),
        Step("a32gen", "A_{3,2} = <cl q_{3,2}>(2)", "R1", ("g32",)),
        Step("a32", "|A_{3,2}| = 2", "F1",
             ("a32gen", "index[E02:K32/K02]", _chev("K32/K02")), ((_chev("K32/K02"), 2),)),
        Step("g21", "(Cl_{2,1}/C)^G has odd order, C = <cl q_{2,1}>", "F2",
             ("h[K_0,1]", "prod_e[K21/K01]", "index[Lambda01:K21/K01]", _gras("K21/K01")),
             ((_gras("K21/K01"), 1),)),
        Step("a21gen", "A_{2,1} = <cl q_{2,1}>(2)", "R1", ("g21",)),
        Step("a21", "|A_{2,1}| = 2", "F1",
             ("a21gen", "index[E01:K21/K01]", _chev("K21/K01")), ((_chev("K21/K01"), 2),)),
        Step("h12", "h_{1,2} is odd", "R1",
             ("index[E02:K12/K02]", _chev("K12/K02")), ((_chev("K12/K02"), 1),)),
        Step("h11", "h_{1,1} is odd", "R2", ("h12",)),
        Step("ram21", "the prime above 2 in K_{2,1} is totally ramified in K_{3,2}", "R5",
             ("totally_ramified[2:K21->K32]",), (("totally_ramified[2:K21->K32]", True),)),
        Step("thm_a", "2 || h_{n,m} for n >= 2, m >= 1", "R4", ("a21", "a32", "ram21")),
        Step("thm_b", "h_{1,m} is odd for m >= 0", "R3", ("h11", "h12")),
        Step("h10", "h_{1,0} is odd", "R1", ("h2[K_1,0]",), (("h2[K_1,0]", 1),)),
        Step("hn0", "h_{n,0} is odd for n >= 0", "F1",
             ("h10", "index[E:K20/K10]", "index[E:K30/K20]", _chev("K20/K10"), _chev("K30/K20")),
             ((_chev("K20/K10"), 1), (_chev("K30/K20"), 1))),
    ),
    "7 mod 16": (
        Step("h10", "h_{1,0} is odd", "R1", ("h2[K_1,0]",), (("h2[K_1,0]", 1),)),
        Step("pi_sym", "<pi, sqrt p> = -1 at (sqrt p) and at the dyadic place", "F2",
             ("symbol[pi,sqrt p at (sqrt p)]", "symbol[pi,sqrt p at q]"),
             (("symbol[pi,sqrt p at (sqrt p)]", -1), ("symbol[pi,sqrt p at q]", -1))),
        Step("an0gen", "A_{n,0} = <cl q_{n,0}> for n >= 1", "F2",
             ("h10", "pi_sym", "index[LambdaD:K20/K10]", "index[LambdaD:K30/K20]",
              _gras("K20/K10"), _gras("K30/K20")),
             ((_gras("K20/K10"), 1), (_gras("K30/K20"), 1))),
        Step("a20", "A_{2,0} = Z/2", "F1",
             ("an0gen", "index[E:K20/K10]", _chev("K20/K10")), ((_chev("K20/K10"), 2),)),
        Step("an1gen", "A_{n,1} = <cl q_{n,1}, cl q'_{n,1}>(2) for n >= 1", "F2",
             ("an0gen", "index[-1:K21/K20]", _gras("K21/K20"), _gras("K31/K30")),
             ((_gras("K21/K20"), 1), (_gras("K31/K30"), 1))),
        Step("h11", "h_{1,1} is odd", "R1",
             ("index[E01:K11/K01]", _chev("K11/K01")), ((_chev("K11/K01"), 1),)),
        Step("a31", "|A_{3,1}| = 4", "F1",
             ("an1gen", "h11", "index[E11:K31/K11]", _chev("K31/K11")),
             (("index[E11:K31/K11]", 4), (_chev("K31/K11"), 4))),
        Step("a21", "|A_{2,1}| = 4", "F1",
             ("an1gen", "h11", "index[E11:K21/K11]", _chev("K21/K11")),
             (("index[E11:K21/K11]", 1), (_chev("K21/K11"), 4))),
        Step("a21s", "A_{2,1} = A_{3,1} = Z/2 x Z/2", "R2", ("a21", "a31", "h11")),
        Step("thm_n1", "A_{n,1} = Z/2 x Z/2 for n >= 2", "R3",
             ("a21s", "totally_ramified[2:K11->K31]"), (("totally_ramified[2:K11->K31]", True),)),
        Step("thm_n0", "A_{n,0} = Z/2 for n >= 2", "R2", ("thm_n1", "a20", "an0gen")),
        Step("q20", "the prime q_{2,0} above 2 of Q(p^(1/4)) is not principal", "G1",
             ("principality[q_2,0]",), (("principality[q_2,0]", "NonPrincipal"),)),
        Step("a12gen", "A_{1,2} = <cl q_{1,2}>(2)", "F2",
             ("h11", "index[LambdaD1:K12/K11]", _gras("K12/K11"), "index[Lambda:K12/K02]"),
             ((_gras("K12/K11"), 1), ("index[LambdaD1:K12/K11]", 2), ("index[Lambda:K12/K02]", 2))),
        Step("a1m_gen", "A_{1,m} = <cl q_{1,m}>(2) is a cyclic quotient of Z/2^(m-1) for m >= 1",
             "F2", ("a12gen", "index_bound[LambdaD2:K13/K12]"),
             (("index_bound[LambdaD2:K13/K12]", 2),)),
        Step("thm_1m", "A_{1,m} = Z/2^(m-1) for m >= 1", "R3", ("a1m_gen", "kida[lambda=1]")),
    ),
    "p=2": (
        Step("h23", "h_{2,3} is odd", "X1", ("h[K_2,3]",)),
        Step("ram", "2 is totally ramified in K_{2,3}", "R5",
             ("totally_ramified[2:K11->K23]",), (("totally_ramified[2:K11->K23]", True),)),
        Step("c4", "h_{n,m} is odd for n >= 1, m >= 2", "R4", ("h23", "ram")),
        Step("c5", "h_{n,m} is odd for all n, m >= 0", "R2", ("c4",)),
    ),
    "2,5 mod 9": (
        Step("obs", "<zeta_3, p> at p is nontrivial", "F1",
             ("obstruction[zeta_3,p]",), (("obstruction[zeta_3,p]", True),)),
        Step("c1", "3 does not divide |Cl^G| for K_{1,2}/K_{0,2}", "F1",
             ("h[K_0,2]", "obs", "prod_e[K12/K02]", "index[E02:K12/K02]", _chev("K12/K02")),
             ((_chev("K12/K02"), 1),)),
        Step("c2", "3 does not divide h_{1,2}", "R1", ("c1",)),
        Step("ram", "3 is totally ramified in K_{n,m} for (n,m) > (0,0)", "R5",
             ("totally_ramified[3:K01->K12]",), (("totally_ramified[3:K01->K12]", True),)),
        Step("c4", "3 does not divide h_{n,m} for n >= 1, m >= 2", "R4", ("c2", "ram")),
        Step("c5", "3 does not divide h_{n,m} for all n, m >= 0", "R2", ("c4",)),
        Step("lei", "mu_m = lambda_m = 0 for all m", "L1", ("c5",)),
    ),
    "4,7 mod 9, symbol != 1": (
        Step("cub", "the cubic residue symbol (3/p)_3 is nontrivial", "F2",
             ("cubic_symbol_trivial",), (("cubic_symbol_trivial", False),)),
        Step("g22", "(Cl_{2,2}/C)^G has order prime to 3, C = <cl q_{2,2}>", "F2",
             ("cub", "h[K_0,2]", "prod_e[K22/K02]", "index[LambdaD:K22/K02]", _gras("K22/K02")),
             (("index[LambdaD:K22/K02]", 81), (_gras("K22/K02"), 1))),
        Step("a22gen", "A_{2,2} = <cl q_{2,2}>(3)", "R1", ("g22",)),
        Step("a22", "|A_{2,2}| = 3", "F1",
             ("a22gen", "index[E02:K22/K02]", _chev("K22/K02")),
             (("index[E02:K22/K02]", 27), (_chev("K22/K02"), 3))),
        Step("a10", "A_{1,0} = Z/3", "G1", ("class_group[K_1,0]",),
             (("class_group[K_1,0]", (3,)),)),
        Step("a11", "A_{1,1} = A_{2,2} = Z/3", "R2", ("a10", "a22")),
        Step("ram", "3 is totally ramified in K_{2,2}", "R5",
             ("totally_ramified[3:K11->K22]",), (("totally_ramified[3:K11->K22]", True),)),
        Step("thm_nm", "A_{n,m} = Z/3 for n >= 1, m >= 1", "R4", ("a11", "ram")),
        Step("thm_n0", "A_{n,m} = Z/3 for n >= 1, m >= 0", "R2", ("thm_nm", "a10")),
        Step("lei", "mu_m = lambda_m = 0 for all m", "L1", ("thm_n0",)),
    ),
}
SCRIPTS["p=3"] = SCRIPTS["2,5 mod 9"]

ASSUMED_FACTS = {
    "p=2": (Fact(ASSUMED, "h[K_2,3]", 1, "literature: class number of Q(2^(1/4), zeta_16) is 1"),),
    "7 mod 16": (Fact(ASSUMED, "kida[lambda=1]", 1,
                      "literature: Kida's formula, lambda-invariant 1 for the cyclotomic "
                      "Z_2-extension of Q(sqrt -p)"),),
}


def script_dependencies(case):
    """Fact keys the case script consumes (everything that is not a claim id)."""
    steps = SCRIPTS[case.tag]
    ids = {s.cid for s in steps}
    seen = []
    for s in steps:
        for u in s.uses:
            if u not in ids and u not in seen:
                seen.append(u)
    return seen


def derive(facts, case):
    """Run the case script over `facts`.  Returns (claims, mismatches).

    A step whose required values fail is not derived, nor is anything built
    on it; each failure is reported as (step id, fact key, expected, got).
    """
    if not case.supported:
        return [], []
    table = {}
    for f in facts:
        table.setdefault(f.key, f)
    steps = SCRIPTS[case.tag]
    missing = [k for k in script_dependencies(case) if k not in table]
    if missing:
        raise MissingFact("missing facts for %s: %s" % (case.tag, ", ".join(missing)))
    claims, mismatches = {}, []
    for s in steps:
        ok = all(u in table or u in claims for u in s.uses)
        for key, want in s.require:
            got = table[key].value
            if got != want:
                mismatches.append((s.cid, key, want, got))
                ok = False
        if not ok:
            continue
        assumptions, trace = [], []
        for u in s.uses:
            if u in claims:
                c = claims[u]
                for t in c.trace:
                    if t not in trace:
                        trace.append(t)
                for a in c.assumptions:
                    if a not in assumptions:
                        assumptions.append(a)
            elif table[u].kind == ASSUMED and u not in assumptions:
                assumptions.append(u)
        rule = RULES[s.rule]
        trace.append(TraceStep(s.cid, rule.name, rule.anchor, tuple(s.uses)))
        status = CONDITIONAL if assumptions else CERTIFIED
        claims[s.cid] = Claim(s.cid, s.statement, status, tuple(assumptions), tuple(trace))
    return list(claims.values()), mismatches


def claims_json(claims):
    return json.dumps([c.to_record() for c in claims], sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- fact collection

@dataclass
class FactOptions:
    principality: bool = True        # run the quartic principality test (ell = 2, 7 mod 16)
    class_group: bool = True         # run class_group_small (ell = 3)
    cap: int = 200                   # relation bound for class_group_small
    bound_principality: float = 4000.0
    units: dict = field(default_factory=dict)   # cached fundamental units by p


def collect_facts(p, ell, options=None):
    """Compute every fact the case script for p needs."""
    from . import genus_engine as ge
    opts = options or FactOptions()
    case = classify(p, ell)
    if not case.supported:
        return []
    out = []
    add = out.append

    def chev(key, gens, gens_label, h=1):
        c = ge.build_case(key_map.get(key, key), p)
        st = ge.chevalley_step(c, gens, h)
        add(Fact(INDEX, "index[%s:%s]" % (gens_label, key), st.index,
                 "genus_engine.rho_image(%s, %s)" % (c.key, gens_label)))
        add(Fact(INDEX, "prod_e[%s]" % key, st.prod_e, "genus_engine.ramification_product(%s)" % c.key))
        add(Fact(AMBIGUOUS, _chev(key), st.value, "genus_engine.chevalley_order"))
        return st

    def gras(key, gens, gens_label, h=1, nc=1, wild="product"):
        c = ge.build_case(key_map.get(key, key), p)
        st = ge.gras_step(c, gens, h, nc, wild)
        add(Fact(INDEX, "index[%s:%s]" % (gens_label, key), st.index,
                 "genus_engine.rho_image(%s, %s)" % (c.key, gens_label)))
        add(Fact(INDEX, "prod_e[%s]" % key, st.prod_e, "genus_engine.ramification_product(%s)" % c.key))
        add(Fact(AMBIGUOUS, _gras(key), st.value, "genus_engine.gras_order"))
        return st

    from .cyclo_field import sunit_set
    key_map = {"K20/K10": "K(k+1)0/Kk0:1", "K30/K20": "K(k+1)0/Kk0:2",
               "K21/K20": "Kk1/Kk0:2", "K31/K30": "Kk1/Kk0:3"}
    if ell == 3:
        key_map = {"K12/K02": "K12/K02:ell3", "K22/K02": "K22/K02:ell3"}
    tag = case.tag
    if ell == 2 and tag != "p=2":
        add(Fact(CLASS_GROUP, "h[K_0,2]", 1, "cyclotomic: Q(zeta_8) has class number 1 (Minkowski bound < 2)"))
        add(Fact(CLASS_GROUP, "h[K_0,1]", 1, "cyclotomic: Q(i) has class number 1"))
        from .quad_field import class_number
        h = class_number(p)
        add(Fact(CLASS_GROUP, "h2[K_1,0]", _two_part(h), "quad_field.class_number(%d) = %d" % (p, h)))
    if tag == "3 mod 8":
        chev("K22/K02", sunit_set("E02_zeta8"), "E02")
        add(_ram_fact(2, (1, 1), (2, 2), p, 2))
    elif tag == "5 mod 8":
        chev("K32/K02", sunit_set("E02_zeta8"), "E02")
        gras("K32/K02", sunit_set("Lambda02_zeta8"), "Lambda02")
        chev("K21/K01", sunit_set("E01_i"), "E01")
        gras("K21/K01", sunit_set("Lambda01_i"), "Lambda01")
        chev("K12/K02", sunit_set("E02_zeta8"), "E02")
        chev("K20/K10", sunit_set("E10", p), "E")
        chev("K30/K20", sunit_set("E10", p), "E")
        add(_ram_fact(2, (2, 1), (3, 2), p, 2))
    elif tag == "7 mod 16":
        c = ge.build_case("K(k+1)0/Kk0:1", p)
        lam = sunit_set("LambdaD_K10", p)
        row = dict(zip(lam.labels, ge.rho_image(c, lam).rows))["pi"]
        add(Fact(INDEX, "symbol[pi,sqrt p at (sqrt p)]", -1 if row[1] else 1,
                 "genus_engine.symbol_at(pi, sqrt p, (sqrt p), 2)"))
        add(Fact(INDEX, "symbol[pi,sqrt p at q]", -1 if row[2] else 1,
                 "genus_engine.rho_image(K20/K10) product completion"))
        chev("K20/K10", sunit_set("E10", p), "E")
        gras("K20/K10", lam, "LambdaD")
        gras("K30/K20", lam, "LambdaD")
        gras("K21/K20", [("-1", -1)], "-1")
        gras("K31/K30", [("-1", -1)], "-1")
        chev("K11/K01", sunit_set("E01_i"), "E01")
        for st in ge.k31_k21_steps(p):
            key = st.key
            add(Fact(INDEX, "index[E11:%s]" % key, st.index,
                     "genus_engine.k31_k21_steps (direct wild symbols, branch-invariant)"))
            add(Fact(INDEX, "prod_e[%s]" % key, st.prod_e, "genus_engine.ramification_product(%s)" % key))
            add(Fact(AMBIGUOUS, _chev(key), st.value, "genus_engine.chevalley_order"))
        gras("K12/K11", sunit_set("LambdaD1", p), "LambdaD1", wild="direct")
        c = ge.build_case("K12/K02", p)
        add(Fact(INDEX, "index[Lambda:K12/K02]",
                 ge.rho_image(c, sunit_set("LambdaK12_zeta8")).order, "genus_engine.rho_image(K12/K02)"))
        # K13/K12: at most 2 by the product formula over its two dyadic places,
        # at least the K12/K11 index by norm compatibility
        lower = dict((f.key, f.value) for f in out)["index[LambdaD1:K12/K11]"]
        add(Fact(INDEX, "index_bound[LambdaD2:K13/K12]", lower if lower == 2 else 0,
                 "product formula upper bound 2 and norm-compatible lower bound from K12/K11"))
        add(_ram_fact(2, (1, 1), (3, 1), p, 2, over="K11->K31"))
        if opts.principality:
            from .radical_orders import norm_two_principality
            v = norm_two_principality(p, 4, tmax=opts.bound_principality)
            status = v.status
            if status == "NonPrincipal" and not ge.dyadic_class_certificate(p, 1):
                status = "Inconclusive"
            add(Fact(PRINCIPALITY, "principality[q_2,0]", status,
                     "radical_orders.norm_two_principality(%d, 4) and genus_engine.dyadic_class_certificate" % p))
        else:
            add(Fact(PRINCIPALITY, "principality[q_2,0]",
                     "NonPrincipal" if ge.dyadic_class_certificate(p, 1) else "Inconclusive",
                     "genus_engine.dyadic_class_certificate(%d)" % p))
    elif tag == "p=2":
        add(_ram_fact(2, (1, 1), (2, 3), p, 2, over="K11->K23"))
    elif ell == 3:
        add(Fact(CLASS_GROUP, "h[K_0,2]", 1, "cyclotomic: Q(zeta_9) has class number 1 (3 is regular)"))
        if tag in ("2,5 mod 9", "p=3"):
            obs = ge.symbol_obstruction(p, 3).exponent != 0 if p != 3 else True
            add(Fact(INDEX, "obstruction[zeta_3,p]", obs,
                     "genus_engine.symbol_obstruction(%d, 3)" % p if p != 3
                     else "p = 3: the only ramified place is wild"))
            chev("K12/K02", sunit_set("E02_zeta9"), "E02")
            add(_ram_fact(3, (0, 1), (1, 2), p, 3, over="K01->K12"))
        else:
            add(Fact(INDEX, "cubic_symbol_trivial", cubic_residue_is_trivial(p),
                     "tower_logic.cubic_residue_is_trivial(%d)" % p))
            gras("K22/K02", sunit_set("LambdaD_zeta9"), "LambdaD")
            chev("K22/K02", sunit_set("E02_zeta9"), "E02")
            add(_ram_fact(3, (1, 1), (2, 2), p, 3))
            if opts.class_group:
                from .radical_orders import class_group_small
                cg = class_group_small(p, 3, 3, cap=opts.cap)
                val = tuple(cg.sylow) if cg.status == "Certified" else "Inconclusive"
                add(Fact(CLASS_GROUP, "class_group[K_1,0]", val,
                         "radical_orders.class_group_small(%d, 3): 3-Sylow" % p))
            else:
                add(Fact(ASSUMED, "class_group[K_1,0]", (3,),
                         "literature: 3-class group of Q(p^(1/3)) is Z/3 for p = 4,7 mod 9"))
    out.extend(ASSUMED_FACTS.get(tag, ()))
    return out


def _two_part(h):
    t = 1
    while h % 2 == 0:
        h //= 2
        t *= 2
    return t


def _ram_fact(q, low, high, p, ell, over=None):
    """Whether the primes above q in K_low are totally ramified in K_high."""
    from .genus_engine import _field_degree, place_count, ramification_index
    label = over or "K%d%d->K%d%d" % (low + high)
    e_lo = ramification_index(q, low, p, ell)
    e_hi = ramification_index(q, high, p, ell)
    deg = _field_degree(high, ell) // _field_degree(low, ell)
    g_lo = place_count(q, low, p, ell)
    g_hi = place_count(q, high, p, ell)
    ok = (e_hi == e_lo * deg) and g_lo == g_hi
    return Fact(INDEX, "totally_ramified[%d:%s]" % (q, label), ok,
                "genus_engine.ramification_index: e %d -> %d, degree %d" % (e_lo, e_hi, deg))
