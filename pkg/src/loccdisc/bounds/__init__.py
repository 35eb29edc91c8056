from .ens2 import (
    ENS2_SET,
    Ens2Params,
    Ens2Spectra,
    ens2_closed_form_bound,
    ens2_closed_form_spectra,
    ens2_effect_template,
    ens2_kraus,
    ens2_post_ensemble,
)
from .holevo import PMRS, Ensemble, holevo_like_bound, pmrs, post_measurement_state

__all__ = [
    "ENS2_SET",
    "Ens2Params",
    "Ens2Spectra",
    "ens2_closed_form_bound",
    "ens2_closed_form_spectra",
    "ens2_effect_template",
    "ens2_kraus",
    "ens2_post_ensemble",
    "PMRS",
    "Ensemble",
    "holevo_like_bound",
    "pmrs",
    "post_measurement_state",
]
