use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The computation succeeded but disagrees with a reference closed form or needs attention.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    /// The statement being checked.
    pub anchor: String,
    pub values: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Record {
    pub fn new(name: impl Into<String>, status: Status, anchor: impl Into<String>, values: Value) -> Self {
        Record {
            name: name.into(),
            status,
            anchor: anchor.into(),
            values,
            notes: vec![],
        }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub clifford: String,
    pub null_frame: String,
    pub spin_lift: String,
    pub weighted_action: String,
    pub k_tensor: String,
    pub k_sign_epsilon: i64,
    pub curvature: String,
    pub ricci: String,
    pub hermitian_form: String,
    pub odd_n_component: String,
    pub parity_rule: String,
    pub projection_factor: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            clifford: "x·y + y·x = -2g(x,y)".into(),
            null_frame: "p = (e_- + e_+)/√2, q = (e_+ - e_-)/√2, g(p,q) = 1".into(),
            spin_lift: "λ_*(e_i ∧ e_j) = ½ e_i e_j".into(),
            weighted_action: "ξ = b·Id + β acts on weight-w spinors as w·b - 4λ_*(β)".into(),
            k_tensor: "Γ = Γ^LC + K, K^c_ab = δ^c_b ω_a + δ^c_a ω_b - g_ab ω^c".into(),
            k_sign_epsilon: -2,
            curvature: "R^d_cab = ∂_a Γ^d_bc - ∂_b Γ^d_ac + Γ^d_ae Γ^e_bc - Γ^d_be Γ^e_ac".into(),
            ricci: "Ric_cb = R^a_cba".into(),
            hermitian_form: "b(φ, χ) = χ† Φ(e_-) φ, Dirac current g(V, X) = -b(X·ψ, ψ), future directed".into(),
            odd_n_component: "odd dimension: the last generator acts as i·T^{⊗m}, times i when timelike".into(),
            parity_rule: "Δ_n = Δ_{n-1} ⊗ ℂ² for even n and Δ_n ≅ Δ_{n-1} for odd n, so g^k has 2·dim for even n"
                .into(),
            projection_factor: "g(Rp,q) g(V,V) = ((2+w)/2) g(RV,V)".into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub conventions: Conventions,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Flagged => summary.flagged += 1,
            }
        }
        Report {
            command: command.into(),
            conventions: Conventions::default(),
            records,
            summary,
        }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
