"""summakit: summation methods for divergent series, their growth conditions and equivalences."""
from .conditions import (ConditionReport, check_all, check_hl, check_ratio, check_rho, check_signed,
                         check_szasz, check_T1, check_T2)
from .corpus import KNOWN_VALUES, corpus_get, corpus_names, power_law, sawtooth
from .equivalence import (EquivalenceReport, ExperimentReport, run_cesaro_riesz, run_claim_monotone,
                          run_prop1, run_tauberian, run_theorem4)
from .limits import LimitEstimate, SumConfig, extrapolate, summate
from .series import (HorizonError, MethodInapplicableError, NodeSequence, PartialSumTable, SeriesSpec,
                     TrigSeries, from_values, partial_sum, trig_to_series)
from .specfile import load_series, series_from_dict
from .summators import (MeanTrace, Method, Sample, abel_mean, cesaro_mean, gamma_mean, lebesgue_general_mean,
                        lebesgue_mean, riesz_mean, trace)
from .young import QuadratureError, YoungKernel, dilation_check, young_eval

__version__ = "0.1.0"
