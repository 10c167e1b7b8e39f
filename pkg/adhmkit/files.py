import json
from dataclasses import dataclass, field

import numpy as np

from adhmkit.adhm.representation import ADHMConfig
from adhmkit.floer.complexes import F2Complex
from adhmkit.series.laurent import LaurentSeries
from adhmkit.series.stability import BundleDatum, StabilityVerdict
from adhmkit.settings import DEFAULT_CONFIG, Config
from adhmkit.vortex.lattice import TorusGrid, VortexState


def encode_matrix(matrix) -> dict:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    return {
        "rows": int(matrix.shape[0]),
        "cols": int(matrix.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in matrix.ravel()]
    }


def decode_matrix(o: dict) -> np.ndarray:
    entries = np.array([complex(re, im) for re, im in o["entries"]], dtype=complex)
    return entries.reshape(o["rows"], o["cols"])


def _is_matrix(o) -> bool:
    return type(o) == dict and {"rows", "cols", "entries"} <= o.keys()


class ComplexMatrixEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, np.ndarray):
            return encode_matrix(o)
        return json.JSONEncoder.default(self, o)


class ComplexMatrixDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if _is_matrix(o):
            return decode_matrix(o)
        return o


class ADHMConfigEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, ADHMConfig):
            return {
                "r": o.r,
                "k": o.k,
                "v": encode_matrix(o.v),
                "w": encode_matrix(o.w),
                "A": encode_matrix(o.A),
                "B": encode_matrix(o.B)
            }
        return json.JSONEncoder.default(self, o)


class ADHMConfigDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if _is_matrix(o):
            return decode_matrix(o)
        if type(o) == dict and {"v", "w", "A", "B"} <= o.keys():
            return ADHMConfig(v=o["v"], w=o["w"], A=o["A"], B=o["B"])
        return o


class F2ComplexEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, F2Complex):
            return {
                "dims": {str(d): n for d, n in sorted(o.dims.items())},
                "differential": {str(d): np.asarray(o.d(d), dtype=int).tolist() for d in o.degrees()
                                 if o.d(d).size}
            }
        return json.JSONEncoder.default(self, o)


class F2ComplexDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and "dims" in o:
            return F2Complex(dims={int(d): n for d, n in o["dims"].items()},
                             differential={int(d): m for d, m in o.get("differential", {}).items()})
        return o


class LaurentSeriesEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, LaurentSeries):
            return o.to_dict()
        return json.JSONEncoder.default(self, o)


class BundleDatumEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, BundleDatum):
            return {
                "rank": o.rank,
                "degree": o.degree,
                "contains_im_psi1": o.contains_im_psi1,
                "contained_in_ker_psi2": o.contained_in_ker_psi2
            }
        return json.JSONEncoder.default(self, o)


class BundleDatumDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and {"rank", "degree"} <= o.keys():
            return BundleDatum(rank=o["rank"],
                               degree=o["degree"],
                               contains_im_psi1=o.get("contains_im_psi1", False),
                               contained_in_ker_psi2=o.get("contained_in_ker_psi2", False))
        return o


class VortexStateEncoder(json.JSONEncoder):
    """ Grid header followed by the fields, site-major: one record per site (i, j). """

    def default(self, o):
        if isinstance(o, VortexState):
            grid = o.grid
            sites = []
            for i in range(grid.N):
                for j in range(grid.N):
                    sites.append({
                        "i": i,
                        "j": j,
                        "a_x": float(o.a_x[i, j]),
                        "a_y": float(o.a_y[i, j]),
                        "psi1": [float(o.psi1[i, j].real), float(o.psi1[i, j].imag)],
                        "psi2": [float(o.psi2[i, j].real), float(o.psi2[i, j].imag)]
                    })
            return {
                "grid": {"N": grid.N, "degree": grid.degree, "L1": grid.L1, "L2": grid.L2},
                "lambda": float(o.lam),
                "theta": [float(complex(o.theta).real), float(complex(o.theta).imag)],
                "sites": sites
            }
        return json.JSONEncoder.default(self, o)


class VortexStateDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and {"grid", "sites"} <= o.keys():
            header = o["grid"]
            grid = TorusGrid(N=header["N"], degree=header["degree"], L1=header["L1"], L2=header["L2"])
            state = VortexState.vacuum(grid, lam=o["lambda"], theta=complex(*o["theta"]))
            for site in o["sites"]:
                i, j = site["i"], site["j"]
                state.a_x[i, j] = site["a_x"]
                state.a_y[i, j] = site["a_y"]
                state.psi1[i, j] = complex(*site["psi1"])
                state.psi2[i, j] = complex(*site["psi2"])
            return state
        return o


@dataclass
class RunReport:
    """ This class stores the machine-readable outcome of a command

    Attributes
    ----------
    command : str
        The subcommand
    parameters : dict
        The parsed arguments
    results : dict
        Command specific results
    max_errors : dict
        Check name -> largest measured error
    passed : bool
        Whether every max error is within the threshold registered for its check

    """

    command: str
    parameters: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    max_errors: dict = field(default_factory=dict)
    passed: bool = True

    @classmethod
    def build(cls, command: str, parameters: dict, results: dict, max_errors: dict, passed: bool = True,
              config: Config = DEFAULT_CONFIG) -> 'RunReport':
        """ Compute pass from the registered thresholds; passed=False forces a failure for non-numeric checks. """
        within = all(float(error) <= config.threshold(check) for check, error in max_errors.items())
        return cls(command, parameters, results, max_errors, bool(passed and within))


class RunReportEncoder(json.JSONEncoder):
    """ Encodes a RunReport with everything it may carry: matrices, configurations, complexes, series, bundle
    data, stability verdicts, vortex states and numpy scalars. """

    _delegates = (ADHMConfigEncoder, F2ComplexEncoder, LaurentSeriesEncoder, BundleDatumEncoder, VortexStateEncoder)

    def default(self, o):
        if isinstance(o, RunReport):
            return {
                "command": o.command,
                "parameters": o.parameters,
                "results": o.results,
                "max_errors": o.max_errors,
                "pass": o.passed
            }
        if isinstance(o, StabilityVerdict):
            return {"stable": o.stable, "clause": o.clause, "witness": o.witness}
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.ndarray):
            return encode_matrix(o)
        for encoder in self._delegates:
            try:
                return encoder.default(self, o)
            except TypeError:
                continue
        return json.JSONEncoder.default(self, o)
