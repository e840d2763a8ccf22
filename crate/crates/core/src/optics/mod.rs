//! Beam splitters, photon-loss channels and detector models.

mod beam_splitter;
mod detectors;
mod homodyne;
mod loss;

pub use beam_splitter::{apply_bs, apply_bs_rho, BeamSplitter, BeamSplitterParams};
pub use detectors::{
    completeness_defect, onoff_elements, pnr_elements, spd_elements, with_inefficiency, ElementKind,
    MeasurementElement,
};
pub use homodyne::{hermite_functions, homodyne_vector, quadrature_bra, QuadratureGrid};
pub use loss::{apply_loss, apply_loss_by_dilation, gamma_tau_to_t, loss_channel, LossChannel};
