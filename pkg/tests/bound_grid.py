"""Frozen outputs of the bound calculators on a fixed grid of small inputs.

Values were computed once by the implementation and frozen; any drift is
a regression.  The closed-form entries are also checked by hand in
test_bounds.py.
"""
from multbound.bounds import (a_const, b_const, caseAB_bound, delta_nxi, mixed_multi_bound, mixed_single_bound,
                              pure_bound, toric_bound)
from multbound.polytope import hull, standard_simplex

D2 = [(0, 0), (2, 0), (0, 1)]
K2 = [(0, 0), (1, 0), (-1, 1)]
K3 = [(0, 0, 0), (0, 1, 0), (0, -1, 1)]

PINNED = {
    'a_const(1,0)': [2, 0, 0],
    'b_const(1,0)': [16, 0],
    'delta_nxi_factor(1,0)': 32,
    'pure(1,0,1,0)': 3,
    'pure(1,0,1,2)': 5,
    'pure(1,0,2,0)': 4,
    'pure(1,0,2,2)': 6,
    'pure(1,0,3,0)': 5,
    'pure(1,0,3,2)': 7,
    'a_const(1,1)': [2, 16, 16],
    'b_const(1,1)': [16, 256],
    'delta_nxi_factor(1,1)': 288,
    'pure(1,1,1,0)': 19,
    'pure(1,1,1,2)': 21,
    'pure(1,1,2,0)': 20,
    'pure(1,1,2,2)': 22,
    'pure(1,1,3,0)': 21,
    'pure(1,1,3,2)': 23,
    'a_const(1,2)': [2, 32, 64],
    'b_const(1,2)': [16, 512],
    'delta_nxi_factor(1,2)': 544,
    'pure(1,2,1,0)': 67,
    'pure(1,2,1,2)': 69,
    'pure(1,2,2,0)': 68,
    'pure(1,2,2,2)': 70,
    'pure(1,2,3,0)': 69,
    'pure(1,2,3,2)': 71,
    'a_const(2,0)': [4, 0, 0],
    'b_const(2,0)': [32, 0],
    'delta_nxi_factor(2,0)': 256,
    'pure(2,0,1,0)': 3,
    'pure(2,0,1,2)': 5,
    'pure(2,0,2,0)': 8,
    'pure(2,0,2,2)': 12,
    'pure(2,0,3,0)': 15,
    'pure(2,0,3,2)': 21,
    'a_const(2,1)': [4, 8712, 8712],
    'b_const(2,1)': [32, 8405000],
    'delta_nxi_factor(2,1)': 8405256,
    'pure(2,1,1,0)': 75933795,
    'pure(2,1,1,2)': 75951221,
    'pure(2,1,2,0)': 75951224,
    'pure(2,1,2,2)': 75968652,
    'pure(2,1,3,0)': 75968655,
    'pure(2,1,3,2)': 75986085,
    'a_const(2,2)': [4, 34848, 69696],
    'b_const(2,2)': [32, 33620000],
    'delta_nxi_factor(2,2)': 33620256,
    'pure(2,2,1,0)': 4857811203,
    'pure(2,2,1,2)': 4857950597,
    'pure(2,2,2,0)': 4857950600,
    'pure(2,2,2,2)': 4858089996,
    'pure(2,2,3,0)': 4858089999,
    'pure(2,2,3,2)': 4858229397,
    'a_const(3,0)': [12, 0, 0],
    'b_const(3,0)': [96, 0],
    'delta_nxi_factor(3,0)': 2304,
    'pure(3,0,1,0)': 3,
    'pure(3,0,1,2)': 5,
    'pure(3,0,2,0)': 16,
    'pure(3,0,2,2)': 24,
    'pure(3,0,3,0)': 45,
    'pure(3,0,3,2)': 63,
    'a_const(3,1)': [12, 390224000, 390224000],
    'b_const(3,1)': [96, 42287269183616],
    'delta_nxi_factor(3,1)': 42287269185920,
    'pure(3,1,1,0)': 59421270678533277611568003,
    'pure(3,1,1,2)': 59421270983082819524464005,
    'pure(3,1,2,0)': 59421271135357593212480016,
    'pure(3,1,2,2)': 59421271439907136686272024,
    'pure(3,1,3,0)': 59421271592181911154736045,
    'pure(3,1,3,2)': 59421271896731456189424063,
    'a_const(3,2)': [12, 3121792000, 6243584000],
    'b_const(3,2)': [96, 338298153468928],
    'delta_nxi_factor(3,2)': 338298153471232,
    'pure(3,2,1,0)': 243389521775596706572985088003,
    'pure(3,2,1,2)': 243389521853561388928071424005,
    'pure(3,2,2,0)': 243389521892543730149319680016,
    'pure(3,2,2,2)': 243389521970508412529380352024,
    'pure(3,2,3,0)': 243389522009490753763115776045,
    'pure(3,2,3,2)': 243389522087455436168150784063,
    'toric(2,0,D,K,0)': 67590,
    'toric(2,0,D,K,2)': 68618,
    'toric(2,1,D,K,0)': 70648395667590,
    'toric(2,1,D,K,2)': 70648429288618,
    'mixed(1,0,None,1,1,2)': 10,
    'mixed(2,0,K2,1,1,2)': 1468626577935,
    'mixed_multi(2,0,K2,1,1,1,2)': 293895295507,
    'mixed_multi(1,0,None,1,1,1,2)': 8,
    'mixed_multi(2,0,K2,1,1,3,2)': 293980285467,
    'mixed_multi(1,0,None,1,1,3,2)': 12,
    'mixed(1,0,None,2,1,2)': 20,
    'mixed(2,0,K2,2,1,2)': 2937253155870,
    'mixed_multi(2,0,K2,2,1,1,2)': 587748096034,
    'mixed_multi(1,0,None,2,1,1,2)': 14,
    'mixed_multi(2,0,K2,2,1,3,2)': 587833085994,
    'mixed_multi(1,0,None,2,1,3,2)': 18,
    'mixed(1,0,None,1,2,2)': 20,
    'mixed(2,0,K2,1,2,2)': 5874506311740,
    'mixed_multi(2,0,K2,1,2,1,2)': 1175581182028,
    'mixed_multi(1,0,None,1,2,1,2)': 16,
    'mixed_multi(2,0,K2,1,2,3,2)': 1175921141868,
    'mixed_multi(1,0,None,1,2,3,2)': 24,
    'mixed(2,1,K2,1,1,2)': 9074238025212843301343870522187128633644815,
    'mixed_multi(2,1,K2,1,1,1,2)': 1814847605042625883089100585159679487537939,
    'mixed_multi(2,1,K2,1,1,3,2)': 1814847605042654494499263825520806367942427,
    'mixed(2,1,K2,2,1,2)': 18148476050425686602687741044374257267289630,
    'mixed_multi(2,1,K2,2,1,1,2)': 3629695210085237460473119550138795534873634,
    'mixed_multi(2,1,K2,2,1,3,2)': 3629695210085266071883282790499922415278122,
    'mixed(2,1,K2,1,2,2)': 36296952100851373205375482088748514534579260,
    'mixed_multi(2,1,K2,1,2,1,2)': 7259390420170503532356402340638717950151756,
    'mixed_multi(2,1,K2,1,2,3,2)': 7259390420170617977997055302083225471769708,
    'caseAB(2,0,None,1,A,2,1,2,1,2)': 4,
    'caseAB(2,1,K2,1,A,2,1,1,2,2)': 338298153487364,
    'caseAB(2,0,None,1,B,2,1,2,1,2)': 20,
    'caseAB(2,1,K2,1,B,2,1,1,2,2)': 1014894460462092,
    'caseAB(2,0,None,2,A,2,1,2,1,2)': 28,
    'caseAB(2,1,K2,2,A,2,1,1,2,2)': 28611410163241376021340866580,
    'caseAB(2,0,None,2,B,2,1,2,1,2)': 44,
    'caseAB(2,1,K2,2,B,2,1,1,2,2)': 42917115244861725733857812506,
    'caseAB(2,0,None,3,A,2,1,2,1,2)': 46,
    'caseAB(2,1,K2,3,A,2,1,1,2,2)': 1814847605042640188794182205171093850996501,
    'caseAB(2,0,None,3,B,2,1,2,1,2)': 46,
    'caseAB(2,1,K2,3,B,2,1,1,2,2)': 1814847605042640188794182205171093850996501,
}


def evaluate(key: str):
    """Recompute one grid entry from its key."""
    name, raw = key.rstrip(")").split("(", 1)
    args = raw.split(",")
    ints = [int(a) if a.lstrip("-").isdigit() else a for a in args]
    bodies = {"D": hull(D2), "K": hull(K2), "K2": hull(K3), "None": None}
    ints = [bodies.get(a, a) if isinstance(a, str) else a for a in ints]
    if name == "a_const":
        return list(a_const(*ints))
    if name == "b_const":
        return list(b_const(*ints))
    if name == "delta_nxi_factor":
        n, delta = ints
        return delta_nxi(n, delta, standard_simplex(n))[1]
    if name == "pure":
        return pure_bound(*ints).value
    if name == "toric":
        return toric_bound(*ints).value
    if name == "mixed":
        return mixed_single_bound(*ints).value
    if name == "mixed_multi":
        return mixed_multi_bound(*ints).value
    if name == "caseAB":
        return caseAB_bound(*ints).value
    raise KeyError(key)
