//! Free pose, contact classification, case dispatch and verification in one call.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::case_i::solve_case_i_detailed;
use crate::case_ii::{
    solve_case_ii_detailed, AcceptanceFilter, BetaPiCheck, CaseIIOptions, MarginReport, ResultantSummary, TOL_ACC,
};
use crate::error::{Error, Result};
use crate::free_pose::{free_pose, O2Candidate, O2Choice};
use crate::geometry::{classify_contact, make_transform, ContactClass, Point2};
use crate::model::MechanismParams;
use crate::solution::EquilibriumSolution;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseSelection {
    /// Chosen from the free lengths.
    #[default]
    Auto,
    ZeroFreeLengths,
    OneNonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolvedCase {
    ZeroFreeLengths,
    OneNonzero,
}

impl SolvedCase {
    /// Case implied by the free lengths.
    pub fn detect(free_lengths: [f64; 3]) -> Result<SolvedCase> {
        match free_lengths {
            [0.0, 0.0, 0.0] => Ok(SolvedCase::ZeroFreeLengths),
            [l01, 0.0, 0.0] if l01 > 0.0 => Ok(SolvedCase::OneNonzero),
            _ => Err(Error::UnsupportedFreeLengthPattern { free_lengths }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub case: CaseSelection,
    pub tol_acc: f64,
    pub filter: AcceptanceFilter,
    pub o2_choice: O2Choice,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            case: CaseSelection::Auto,
            tol_acc: TOL_ACC,
            filter: AcceptanceFilter::Squared,
            o2_choice: O2Choice::HigherY,
        }
    }
}

/// Free-length pose in the fixed frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreePoseReport {
    pub p: Point2,
    pub o2: Point2,
    pub a2: Point2,
    pub phi2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactStage {
    pub free_pose: Option<FreePoseReport>,
    /// `None` when the free pose cannot be assembled and contact is assumed.
    pub classification: Option<ContactClass>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub real: usize,
    pub real_accepted: usize,
}

impl Counts {
    pub fn of(solutions: &[EquilibriumSolution]) -> Counts {
        let accepted = solutions.iter().filter(|s| s.accepted).count();
        Counts {
            total: solutions.len(),
            accepted,
            rejected: solutions.len() - accepted,
            real: solutions.iter().filter(|s| s.is_real).count(),
            real_accepted: solutions.iter().filter(|s| s.is_real && s.accepted).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseIDiagnostics {
    /// Ascending powers of `tan(beta / 2)`.
    pub quartic: Vec<f64>,
    pub beta_pi_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseIIDiagnostics {
    pub resultant: ResultantSummary,
    pub beta_pi: BetaPiCheck,
    pub margin: MarginReport,
    pub tol_acc: f64,
    pub filter: AcceptanceFilter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub contact: ContactStage,
    /// `None` when no equilibrium solve ran.
    pub case: Option<SolvedCase>,
    pub point_e: Option<Point2>,
    pub counts: Counts,
    pub solutions: Vec<EquilibriumSolution>,
    pub case_i: Option<CaseIDiagnostics>,
    pub case_ii: Option<CaseIIDiagnostics>,
    /// Wall time of the analysis; not serialized so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage { stage: name, source: Box::new(e) })
}

fn contact_stage(params: &MechanismParams, choice: O2Choice) -> Result<ContactStage> {
    if params.free_lengths == [0.0; 3] {
        return Ok(ContactStage {
            free_pose: None,
            classification: None,
            note: Some("all free lengths zero; contact assumed".into()),
        });
    }
    let pose = match free_pose(params) {
        Ok(p) => p,
        Err(Error::NotAssemblable { reason }) => {
            return Ok(ContactStage {
                free_pose: None,
                classification: None,
                note: Some(format!("free pose not assemblable ({reason}); contact assumed")),
            })
        }
        Err(e) => return Err(e),
    };
    let O2Candidate { o2, phi2 } = pose.select(choice)?;
    let base = params.base_transform();
    let p = base.compose(&make_transform(phi2, o2)).apply(params.p_p_in2);
    let classification = classify_contact(p, &params.plane())?;
    Ok(ContactStage {
        free_pose: Some(FreePoseReport { p, o2: base.apply(o2), a2: base.apply(pose.a2), phi2: phi2 + params.phi1 }),
        classification: Some(classification),
        note: None,
    })
}

/// Runs the whole analysis for one parameter set.
pub fn run_analysis(params: &MechanismParams, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    stage("validation", params.validate())?;
    let contact = stage("contact detection", contact_stage(params, options.o2_choice))?;
    if contact.classification == Some(ContactClass::NoContact) {
        return Ok(AnalysisReport {
            contact,
            case: None,
            point_e: None,
            counts: Counts::default(),
            solutions: Vec::new(),
            case_i: None,
            case_ii: None,
            elapsed: start.elapsed(),
        });
    }
    let case = match options.case {
        CaseSelection::Auto => stage("case selection", SolvedCase::detect(params.free_lengths))?,
        CaseSelection::ZeroFreeLengths => SolvedCase::ZeroFreeLengths,
        CaseSelection::OneNonzero => SolvedCase::OneNonzero,
    };
    let point_e = stage("point E", params.point_e())?;
    let (solutions, case_i, case_ii) = match case {
        SolvedCase::ZeroFreeLengths => {
            let out = stage("zero-free-length solve", solve_case_i_detailed(params))?;
            let diag = CaseIDiagnostics { quartic: out.quartic, beta_pi_residual: out.beta_pi_residual };
            (out.solutions, Some(diag), None)
        }
        SolvedCase::OneNonzero => {
            let opts = CaseIIOptions { tol_acc: options.tol_acc, filter: options.filter };
            let out = stage("one-free-length solve", solve_case_ii_detailed(params, &opts))?;
            let diag = CaseIIDiagnostics {
                resultant: out.resultant,
                beta_pi: out.beta_pi,
                margin: out.margin,
                tol_acc: options.tol_acc,
                filter: options.filter,
            };
            (out.solutions, None, Some(diag))
        }
    };
    Ok(AnalysisReport {
        contact,
        case: Some(case),
        point_e: Some(point_e),
        counts: Counts::of(&solutions),
        solutions,
        case_i,
        case_ii,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::reference_params;

    #[test]
    fn zero_free_lengths_assume_contact() {
        let r = run_analysis(&reference_params(), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.case, Some(SolvedCase::ZeroFreeLengths));
        assert_eq!(r.contact.classification, None);
        assert_eq!(r.counts, Counts { total: 4, accepted: 4, rejected: 0, real: 2, real_accepted: 2 });
    }

    #[test]
    fn detection() {
        assert_eq!(SolvedCase::detect([0.0; 3]).unwrap(), SolvedCase::ZeroFreeLengths);
        assert_eq!(SolvedCase::detect([1.0, 0.0, 0.0]).unwrap(), SolvedCase::OneNonzero);
        assert!(matches!(SolvedCase::detect([0.0, 0.5, 0.0]), Err(Error::UnsupportedFreeLengthPattern { .. })));
    }

    #[test]
    fn unsupported_pattern_is_a_validation_error() {
        let p = MechanismParams { free_lengths: [0.0, 0.5, 0.0], ..reference_params() };
        let err = run_analysis(&p, &AnalysisOptions::default()).unwrap_err();
        assert!(err.is_validation());
        assert!(matches!(err.root(), Error::UnsupportedFreeLengthPattern { .. }));
        assert!(err.to_string().starts_with("case selection"));
    }

    #[test]
    fn forced_case_mismatch_is_reported() {
        let options = AnalysisOptions { case: CaseSelection::OneNonzero, ..Default::default() };
        let err = run_analysis(&reference_params(), &options).unwrap_err();
        assert!(matches!(err.root(), Error::WrongFreeLengthPattern { .. }));
    }

    /// Assemblable free lengths with the surface moved far along its normal,
    /// so the free pin and the origin share a side.
    #[test]
    fn origin_side_free_pose_short_circuits() {
        let mut p = MechanismParams { free_lengths: [4.0, 3.0, 4.0], ..reference_params() };
        p.p_m = p.p_m + 1000.0 * p.plane().normal;
        let pin = contact_stage(&p, O2Choice::HigherY).unwrap().free_pose.unwrap().p;
        let plane = p.plane();
        assert_eq!(plane.evaluate(pin).signum(), plane.offset.signum());

        let r = run_analysis(&p, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.contact.classification, Some(ContactClass::NoContact));
        assert!(r.case.is_none() && r.solutions.is_empty());
        assert_eq!(r.counts, Counts::default());
    }

    #[test]
    fn penetrating_free_pose_proceeds_to_solve() {
        let p = MechanismParams { free_lengths: [4.0, 3.0, 4.0], ..reference_params() };
        let stage = contact_stage(&p, O2Choice::HigherY).unwrap();
        let pin = stage.free_pose.unwrap().p;
        let plane = p.plane();
        let expect = if plane.evaluate(pin).signum() == plane.offset.signum() {
            ContactClass::NoContact
        } else {
            ContactClass::InContact
        };
        assert_eq!(stage.classification, Some(expect));
        if expect == ContactClass::InContact {
            let err = run_analysis(&p, &AnalysisOptions::default()).unwrap_err();
            assert!(matches!(err.root(), Error::UnsupportedFreeLengthPattern { .. }));
        }
    }
}
