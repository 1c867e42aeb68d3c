//! End-to-end K-theory assembly: hypothesis checks, equivalence classes of
//! idempotents, stabilizer groups, and the direct-sum invariant, gathered
//! into a serializable report with a text rendering.

pub mod classes;
pub mod ktable;
pub mod recognize;
pub mod stabilizer;

pub use classes::{approx_witness, equiv_classes, verify_witnesses, ApproxClass, Witness};
pub use ktable::{KSum, KTable, KTableEntry, KTableError, KValue};
pub use recognize::{recognize, GroupDescriptor};
pub use stabilizer::{stabilizer_scan, StabilizerScan};

use serde::{Deserialize, Serialize};

use crate::grading::{
    check_morphism, idempotent_purity_witness, maximal_section, maximals_collision, Grading,
    Group, SectionError,
};
use crate::semigroup::{validate_excluding, Elem, InverseSemigroupTable, ZeroFVerdict};

/// Outcome of one verified hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

/// Confidence stamp of a report.  `Final` requires every hypothesis to pass
/// with nothing skipped and no flags raised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stamp {
    Final,
    Conditional,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub from: String,
    pub to: String,
    pub via: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: String,
    pub members: Vec<String>,
    pub witnesses: Vec<WitnessReport>,
}

/// Stabilizer of one class representative together with its K-theory
/// summand.  Parallel to `classes` by index (`base == representative`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub base: String,
    pub generators: Vec<String>,
    pub descriptor: String,
    /// `Some(true)` when the four equivalent characterizations of the
    /// stabilizer produced identical word sets; `None` when no maximal
    /// section was available to evaluate the section-based ones.
    pub definitions_agree: Option<bool>,
    #[serde(rename = "K0")]
    pub k0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheoryReport {
    pub schema: String,
    pub input: String,
    pub classes: Vec<ClassReport>,
    pub stabilizers: Vec<StabilizerReport>,
    #[serde(rename = "K0")]
    pub k0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    pub hypotheses: Vec<HypothesisEntry>,
    /// Scale caveats (truncation, caps).  Any flag demotes the stamp to
    /// `Conditional`.
    pub flags: Vec<String>,
    /// Informational remarks (sampling, unresolved summands).  Notes never
    /// affect the stamp.
    pub notes: Vec<String>,
    pub stamp: Stamp,
}

impl KTheoryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<KTheoryReport, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Process exit code under the reporting contract: 0 only for a final
    /// stamp, 2 for anything completed but provisional or failed.
    pub fn exit_code(&self) -> i32 {
        match self.stamp {
            Stamp::Final => 0,
            Stamp::Conditional | Stamp::Failed => 2,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("K-theory assembly: {}", self.input));
        let stamp = match self.stamp {
            Stamp::Final => "final",
            Stamp::Conditional => "conditional",
            Stamp::Failed => "failed",
        };
        push(&mut out, format!("stamp: {}", stamp));
        push(&mut out, format!("K0 = {}", self.k0));
        push(&mut out, format!("K1 = {}", self.k1));
        push(&mut out, format!("classes ({}):", self.classes.len()));
        for (class, stab) in self.classes.iter().zip(&self.stabilizers) {
            push(
                &mut out,
                format!(
                    "  [{}] = {{{}}}; stabilizer {} -> K0 = {}, K1 = {}{}",
                    class.representative,
                    class.members.join(", "),
                    stab.descriptor,
                    stab.k0,
                    stab.k1,
                    match &stab.source {
                        Some(src) => format!("  [source: {}]", src),
                        None => String::new(),
                    }
                ),
            );
            for w in &class.witnesses {
                push(&mut out, format!("      witness {} ~ {} via {}", w.from, w.to, w.via));
            }
        }
        push(&mut out, "hypotheses:".to_string());
        for h in &self.hypotheses {
            let tag = match h.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "skip",
            };
            push(&mut out, format!("  {:4} {}: {}", tag, h.name, h.detail));
        }
        for f in &self.flags {
            push(&mut out, format!("flag: {}", f));
        }
        for n in &self.notes {
            push(&mut out, format!("note: {}", n));
        }
        out
    }
}

/// K-theory of one stabilizer, as resolvable values or symbolic stand-ins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassKTheory {
    pub k0: KValue,
    pub k1: KValue,
    /// Citation carried by a K-table entry; `None` for the built-in trivial
    /// value and for symbolic stand-ins.
    pub source: Option<String>,
}

/// Resolves the K-theory summand of a recognized group.  Only the trivial
/// group's value is built in; everything else comes from the user-supplied
/// table or stays symbolic — never guessed.
pub fn k_of_group(descriptor: &GroupDescriptor, table: &KTable) -> ClassKTheory {
    if *descriptor == GroupDescriptor::Trivial {
        return ClassKTheory { k0: KValue::ZPower(1), k1: KValue::ZPower(0), source: None };
    }
    let canonical = descriptor.canonical();
    if let Some(entry) = table.lookup(&canonical) {
        return ClassKTheory {
            k0: KValue::parse(&entry.k0),
            k1: KValue::parse(&entry.k1),
            source: Some(entry.source.clone()),
        };
    }
    let inner = match descriptor {
        GroupDescriptor::Unresolved { generators } => format!("⟨{}⟩", generators.join(", ")),
        other => other.canonical(),
    };
    ClassKTheory {
        k0: KValue::Symbolic(format!("K_0(C*_r({}))", inner)),
        k1: KValue::Symbolic(format!("K_1(C*_r({}))", inner)),
        source: None,
    }
}

/// Everything `assemble` needs beyond the table and grading.
#[derive(Debug, Clone)]
pub struct AssembleOptions {
    /// Instance label echoed into the report (file path, fixture name, …).
    pub instance: String,
    /// Truncation stand-ins to exclude from every scan.
    pub excluded: Vec<Elem>,
    /// When the table is a finite window of an infinite object, the caveat
    /// text to raise as a flag.
    pub truncation: Option<String>,
    /// Largest element count for which the cubic law scan runs; beyond it
    /// the law hypothesis is recorded as skipped (demoting the stamp)
    /// instead of stalling.  `None` scans unconditionally.
    pub law_scan_cap: Option<usize>,
    pub ktable: KTable,
}

impl AssembleOptions {
    pub fn new(instance: impl Into<String>) -> AssembleOptions {
        AssembleOptions {
            instance: instance.into(),
            excluded: Vec::new(),
            truncation: None,
            law_scan_cap: None,
            ktable: KTable::empty(),
        }
    }
}

/// Stamp from a hypothesis ledger: any failure sinks the report, anything
/// skipped or flagged keeps it provisional.
pub fn compute_stamp(hypotheses: &[HypothesisEntry], flags: &[String]) -> Stamp {
    if hypotheses.iter().any(|h| h.verdict == Verdict::Fail) {
        Stamp::Failed
    } else if hypotheses.iter().any(|h| h.verdict == Verdict::Skipped) || !flags.is_empty() {
        Stamp::Conditional
    } else {
        Stamp::Final
    }
}

fn group_kind(group: &Group) -> String {
    match group {
        Group::Free { alphabet } => format!("free group on {} letters", alphabet.len()),
        Group::ZPow { n } => format!("free abelian group of rank {}", n),
        Group::Finite(t) => format!("finite group of order {}", t.order()),
    }
}

fn entry(name: &str, verdict: Verdict, detail: impl Into<String>) -> HypothesisEntry {
    HypothesisEntry { name: name.to_string(), verdict, detail: detail.into() }
}

/// Downstream hypothesis names, used to emit explicit `skipped` entries when
/// the law check fails and nothing further can be trusted.
const DOWNSTREAM_HYPOTHESES: [&str; 7] = [
    "grading is a morphism",
    "0-F-inverse",
    "grading injective on maximal elements",
    "grading idempotent-pure",
    "grading group in a-T-menable whitelist",
    "connecting witnesses verified",
    "stabilizers closed and definitions agree",
];

/// Runs the whole pipeline on a table + grading: verifies the hypothesis
/// ledger, partitions the nonzero idempotents, scans and recognizes each
/// stabilizer, and totals the K-theory direct sum.  Failures are recorded
/// in the ledger, never raised.
pub fn assemble(
    table: &InverseSemigroupTable,
    grading: &Grading,
    opts: &AssembleOptions,
) -> KTheoryReport {
    let mut hypotheses: Vec<HypothesisEntry> = Vec::new();
    let mut flags: Vec<String> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    if let Some(caveat) = &opts.truncation {
        flags.push(caveat.clone());
    }

    if opts.law_scan_cap.is_some_and(|cap| table.n() > cap) {
        hypotheses.push(entry(
            "inverse-semigroup laws",
            Verdict::Skipped,
            format!(
                "{} elements exceed the exhaustive law-scan budget of {}",
                table.n(),
                opts.law_scan_cap.unwrap()
            ),
        ));
    } else {
        let validation = validate_excluding(table, &opts.excluded);
        if validation.skipped_checks > 0 {
            notes.push(format!(
                "{} law checks skipped at excluded stand-ins",
                validation.skipped_checks
            ));
        }
        if validation.is_valid() {
            hypotheses.push(entry(
                "inverse-semigroup laws",
                Verdict::Pass,
                "all laws hold on the scanned scope",
            ));
        } else {
            hypotheses.push(entry(
                "inverse-semigroup laws",
                Verdict::Fail,
                validation.violations[0].render(table),
            ));
            for name in DOWNSTREAM_HYPOTHESES {
                hypotheses.push(entry(name, Verdict::Skipped, "law check failed"));
            }
            return KTheoryReport {
                schema: crate::REPORT_SCHEMA.to_string(),
                input: opts.instance.clone(),
                classes: Vec::new(),
                stabilizers: Vec::new(),
                k0: "(not computed)".to_string(),
                k1: "(not computed)".to_string(),
                hypotheses,
                flags,
                notes,
                stamp: Stamp::Failed,
            };
        }
    }

    let adjoined = table.adjoin_identity();
    let s1 = &adjoined.table;
    let lifted = grading.extend_to_adjoined(&adjoined);
    let fresh_one = (!adjoined.was_monoid).then_some(adjoined.one);

    let morphism = check_morphism(s1, &lifted, &opts.excluded);
    if morphism.sampled {
        notes.push(format!(
            "grading laws sampled: {} of {} pairs checked",
            morphism.pairs_checked, morphism.pairs_total
        ));
    }
    hypotheses.push(match morphism.violations.first() {
        None => entry(
            "grading is a morphism",
            Verdict::Pass,
            format!("{} pairs checked", morphism.pairs_checked),
        ),
        Some(v) => entry("grading is a morphism", Verdict::Fail, v.render(s1)),
    });

    let zero_f = s1.is_zero_f_inverse_excluding(&opts.excluded);
    hypotheses.push(match &zero_f {
        ZeroFVerdict::ZeroFInverse { .. } => entry(
            "0-F-inverse",
            Verdict::Pass,
            "every nonzero element lies beneath a unique maximal element",
        ),
        ZeroFVerdict::TwoCovers { s, m1, m2 } => entry(
            "0-F-inverse",
            Verdict::Fail,
            format!(
                "{} lies beneath distinct maximal elements {} and {}",
                s1.name(*s),
                s1.name(*m1),
                s1.name(*m2)
            ),
        ),
        ZeroFVerdict::NoCover { s } => entry(
            "0-F-inverse",
            Verdict::Fail,
            format!("{} lies beneath no maximal element", s1.name(*s)),
        ),
    });

    let maximals = s1.maximal_elements_excluding(&opts.excluded);
    hypotheses.push(match maximals_collision(&lifted, &maximals) {
        None => entry(
            "grading injective on maximal elements",
            Verdict::Pass,
            format!("{} maximal elements carry distinct grades", maximals.len()),
        ),
        Some((a, b)) => entry(
            "grading injective on maximal elements",
            Verdict::Fail,
            format!("{} and {} share a grade", s1.name(a), s1.name(b)),
        ),
    });

    hypotheses.push(match idempotent_purity_witness(s1, &lifted, &opts.excluded) {
        None => entry(
            "grading idempotent-pure",
            Verdict::Pass,
            "only idempotents are graded by the identity",
        ),
        Some(s) => entry(
            "grading idempotent-pure",
            Verdict::Fail,
            format!("non-idempotent {} is graded by the identity", s1.name(s)),
        ),
    });

    hypotheses.push(entry(
        "grading group in a-T-menable whitelist",
        Verdict::Pass,
        format!("{} — whitelisted kind", group_kind(lifted.group())),
    ));

    let section = match maximal_section(s1, &lifted, &opts.excluded) {
        Ok(section) => Some(section),
        Err(SectionError::NotZeroF(_)) | Err(SectionError::NotInjectiveOnMaximals(..)) => None,
    };

    let classes = equiv_classes(table, &opts.excluded);
    hypotheses.push(if verify_witnesses(table, &classes) {
        entry(
            "connecting witnesses verified",
            Verdict::Pass,
            format!(
                "{} spanning witnesses match their claimed endpoints",
                classes.iter().map(|c| c.witnesses.len()).sum::<usize>()
            ),
        )
    } else {
        entry("connecting witnesses verified", Verdict::Fail, "a witness endpoint mismatches")
    });

    let mut class_reports = Vec::with_capacity(classes.len());
    let mut stab_reports = Vec::with_capacity(classes.len());
    let mut k0_sum = KSum::default();
    let mut k1_sum = KSum::default();
    let mut all_closed = true;
    let mut any_disagree = false;
    let mut section_missing = section.is_none();

    for class in &classes {
        let scan = stabilizer_scan(
            s1,
            fresh_one,
            &lifted,
            section.as_ref(),
            class.representative,
            &opts.excluded,
        );
        all_closed &= scan.closed_under_ops;
        match scan.definitions_agree {
            Some(true) => {}
            Some(false) => any_disagree = true,
            None => section_missing = true,
        }

        let descriptor = recognize(lifted.group(), &scan.words);
        let k = k_of_group(&descriptor, &opts.ktable);
        if descriptor.is_unresolved() {
            notes.push(format!(
                "stabilizer at {} not certified; summand kept symbolic",
                table.name(class.representative)
            ));
        } else if descriptor != GroupDescriptor::Trivial
            && opts.ktable.lookup(&descriptor.canonical()).is_none()
        {
            notes.push(format!(
                "no K-table entry for {}; summand kept symbolic",
                descriptor.canonical()
            ));
        }
        k0_sum.add(&k.k0);
        k1_sum.add(&k.k1);

        class_reports.push(ClassReport {
            representative: table.name(class.representative).to_string(),
            members: class.members.iter().map(|&m| table.name(m).to_string()).collect(),
            witnesses: class
                .witnesses
                .iter()
                .map(|w| WitnessReport {
                    from: table.name(w.from).to_string(),
                    to: table.name(w.to).to_string(),
                    via: table.name(w.via).to_string(),
                })
                .collect(),
        });
        stab_reports.push(StabilizerReport {
            base: table.name(class.representative).to_string(),
            generators: scan.words.iter().map(|w| lifted.group().format_elem(w)).collect(),
            descriptor: descriptor.canonical(),
            definitions_agree: scan.definitions_agree,
            k0: k.k0.render(),
            k1: k.k1.render(),
            source: k.source,
        });
    }

    hypotheses.push(if any_disagree || !all_closed {
        entry(
            "stabilizers closed and definitions agree",
            Verdict::Fail,
            if all_closed {
                "the four stabilizer characterizations produced different word sets"
            } else {
                "a stabilizer word set is not closed under product and inverse"
            },
        )
    } else if section_missing {
        entry(
            "stabilizers closed and definitions agree",
            Verdict::Skipped,
            "no maximal section available; section-based characterizations not evaluated",
        )
    } else {
        entry(
            "stabilizers closed and definitions agree",
            Verdict::Pass,
            format!(
                "{} stabilizer word sets closed; all four characterizations agree",
                classes.len()
            ),
        )
    });

    let stamp = compute_stamp(&hypotheses, &flags);

    KTheoryReport {
        schema: crate::REPORT_SCHEMA.to_string(),
        input: opts.instance.clone(),
        classes: class_reports,
        stabilizers: stab_reports,
        k0: k0_sum.render(),
        k1: k1_sum.render(),
        hypotheses,
        flags,
        notes,
        stamp,
    }
}
