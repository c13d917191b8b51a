//! Hand-engineered program features, counted over methods reachable from `main`.

mod density;
mod io;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ast::{
    self, build_call_graph, reachable_from_main, visit, AstNode, MethodId, NodeKind, ParseError,
    SourceUnit, Visitor,
};

pub use density::{
    export_density, export_density_for, write_density_csv, DensityError, DensityTable,
};
pub use io::{read_feature_csv, write_feature_csv, FeatureRow};

/// Library types detected by name in type references and object creation.
pub const PRIORITY_QUEUE: &str = "PriorityQueue";
pub const HASH_MAP: &str = "HashMap";
pub const HASH_SET: &str = "HashSet";
/// Invocation name that marks a sort call, qualified or not.
pub const SORT: &str = "sort";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureName {
    NumberOfMethods,
    NumberOfBreaks,
    NumberOfSwitches,
    NumberOfLoops,
    PriorityQueuePresent,
    SortPresent,
    HashMapPresent,
    HashSetPresent,
    NestedLoopDepth,
    RecursionPresent,
    NumberOfVariables,
    NumberOfIfs,
    NumberOfStatements,
    NumberOfJumps,
}

impl FeatureName {
    /// All features in their canonical (CSV column) order.
    pub const ALL: [FeatureName; 14] = [
        FeatureName::NumberOfMethods,
        FeatureName::NumberOfBreaks,
        FeatureName::NumberOfSwitches,
        FeatureName::NumberOfLoops,
        FeatureName::PriorityQueuePresent,
        FeatureName::SortPresent,
        FeatureName::HashMapPresent,
        FeatureName::HashSetPresent,
        FeatureName::NestedLoopDepth,
        FeatureName::RecursionPresent,
        FeatureName::NumberOfVariables,
        FeatureName::NumberOfIfs,
        FeatureName::NumberOfStatements,
        FeatureName::NumberOfJumps,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureName::NumberOfMethods => "number_of_methods",
            FeatureName::NumberOfBreaks => "number_of_breaks",
            FeatureName::NumberOfSwitches => "number_of_switches",
            FeatureName::NumberOfLoops => "number_of_loops",
            FeatureName::PriorityQueuePresent => "priority_queue_present",
            FeatureName::SortPresent => "sort_present",
            FeatureName::HashMapPresent => "hash_map_present",
            FeatureName::HashSetPresent => "hash_set_present",
            FeatureName::NestedLoopDepth => "nested_loop_depth",
            FeatureName::RecursionPresent => "recursion_present",
            FeatureName::NumberOfVariables => "number_of_variables",
            FeatureName::NumberOfIfs => "number_of_ifs",
            FeatureName::NumberOfStatements => "number_of_statements",
            FeatureName::NumberOfJumps => "number_of_jumps",
        }
    }

    /// Human-readable name used in report tables.
    pub fn title(self) -> &'static str {
        match self {
            FeatureName::NumberOfMethods => "No. of methods",
            FeatureName::NumberOfBreaks => "No. of breaks",
            FeatureName::NumberOfSwitches => "No. of switches",
            FeatureName::NumberOfLoops => "No. of loops",
            FeatureName::PriorityQueuePresent => "Priority Queue present",
            FeatureName::SortPresent => "No. of sorts",
            FeatureName::HashMapPresent => "Hash Map present",
            FeatureName::HashSetPresent => "Hash Set present",
            FeatureName::NestedLoopDepth => "Nested loop depth",
            FeatureName::RecursionPresent => "Recursion present",
            FeatureName::NumberOfVariables => "No. of Variables",
            FeatureName::NumberOfIfs => "No. of ifs",
            FeatureName::NumberOfStatements => "No. of statements",
            FeatureName::NumberOfJumps => "No. of jumps",
        }
    }

    pub fn is_flag(self) -> bool {
        matches!(
            self,
            FeatureName::PriorityQueuePresent
                | FeatureName::SortPresent
                | FeatureName::HashMapPresent
                | FeatureName::HashSetPresent
                | FeatureName::RecursionPresent
        )
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown feature `{s}`"))
    }
}

/// The fourteen statistical features of one program. Flags are 0 or 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureVector {
    pub number_of_methods: u32,
    pub number_of_breaks: u32,
    pub number_of_switches: u32,
    pub number_of_loops: u32,
    pub priority_queue_present: u32,
    pub sort_present: u32,
    pub hash_map_present: u32,
    pub hash_set_present: u32,
    pub nested_loop_depth: u32,
    pub recursion_present: u32,
    pub number_of_variables: u32,
    pub number_of_ifs: u32,
    pub number_of_statements: u32,
    pub number_of_jumps: u32,
}

impl FeatureVector {
    pub fn get(&self, name: FeatureName) -> u32 {
        self.to_array()[name.index()]
    }

    pub fn to_array(&self) -> [u32; 14] {
        [
            self.number_of_methods,
            self.number_of_breaks,
            self.number_of_switches,
            self.number_of_loops,
            self.priority_queue_present,
            self.sort_present,
            self.hash_map_present,
            self.hash_set_present,
            self.nested_loop_depth,
            self.recursion_present,
            self.number_of_variables,
            self.number_of_ifs,
            self.number_of_statements,
            self.number_of_jumps,
        ]
    }

    pub fn from_array(a: [u32; 14]) -> Self {
        FeatureVector {
            number_of_methods: a[0],
            number_of_breaks: a[1],
            number_of_switches: a[2],
            number_of_loops: a[3],
            priority_queue_present: a[4],
            sort_present: a[5],
            hash_map_present: a[6],
            hash_set_present: a[7],
            nested_loop_depth: a[8],
            recursion_present: a[9],
            number_of_variables: a[10],
            number_of_ifs: a[11],
            number_of_statements: a[12],
            number_of_jumps: a[13],
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.to_array().iter().map(|&v| f64::from(v)).collect()
    }
}

/// Maximum number of simultaneously open loops along any path of `root`,
/// counted with an enter/exit counter over the four loop kinds.
pub fn nested_loop_depth(root: &AstNode) -> u32 {
    struct Depth {
        current: u32,
        max: u32,
    }
    impl Visitor for Depth {
        fn enter(&mut self, node: &AstNode) -> bool {
            if node.kind.is_loop() {
                self.current += 1;
                self.max = self.max.max(self.current);
            }
            true
        }
        fn exit(&mut self, node: &AstNode) {
            if node.kind.is_loop() {
                self.current -= 1;
            }
        }
    }
    let mut v = Depth { current: 0, max: 0 };
    visit(root, &mut v);
    v.max
}

fn names_type(text: &str, wanted: &str) -> bool {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$'))
        .any(|part| part == wanted)
}

/// Computes the feature vector over the subtrees of `reachable` methods.
pub fn extract_features(root: &AstNode, reachable: &BTreeSet<MethodId>) -> FeatureVector {
    let cg = build_call_graph(root);
    let methods: Vec<&AstNode> = root
        .declared_methods()
        .into_iter()
        .filter(|m| reachable.contains(&MethodId::of(m)))
        .collect();

    let mut fv = FeatureVector {
        number_of_methods: methods.len() as u32,
        recursion_present: u32::from(cg.has_cycle_within(reachable)),
        ..FeatureVector::default()
    };
    for method in methods {
        fv.nested_loop_depth = fv.nested_loop_depth.max(nested_loop_depth(method));
        for node in method.descendants() {
            let kind = node.kind;
            if kind.is_loop() {
                fv.number_of_loops += 1;
            }
            if kind.is_statement() && kind != NodeKind::Block {
                fv.number_of_statements += 1;
            }
            match kind {
                NodeKind::IfStatement => fv.number_of_ifs += 1,
                NodeKind::SwitchStatement => fv.number_of_switches += 1,
                NodeKind::BreakStatement => {
                    fv.number_of_breaks += 1;
                    fv.number_of_jumps += 1;
                }
                NodeKind::ContinueStatement => fv.number_of_jumps += 1,
                NodeKind::VariableDeclarationFragment => fv.number_of_variables += 1,
                NodeKind::MethodInvocation if node.value() == Some(SORT) => fv.sort_present = 1,
                NodeKind::TypeRef => {
                    let text = node.value().unwrap_or_default();
                    if names_type(text, PRIORITY_QUEUE) {
                        fv.priority_queue_present = 1;
                    }
                    if names_type(text, HASH_MAP) {
                        fv.hash_map_present = 1;
                    }
                    if names_type(text, HASH_SET) {
                        fv.hash_set_present = 1;
                    }
                }
                _ => {}
            }
        }
    }
    fv
}

/// Parse, build the call graph, and extract features in one step.
pub fn features_for_unit(unit: &SourceUnit) -> Result<FeatureVector, ParseError> {
    let root = ast::parse(unit)?;
    let reachable = reachable_from_main(&build_call_graph(&root));
    Ok(extract_features(&root, &reachable))
}
