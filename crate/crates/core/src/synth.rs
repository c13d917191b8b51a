//! Synthetic data for demos and tests: separable Gaussian blobs and a
//! generator of small labeled Java programs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::ast::SourceUnit;
use crate::class::ComplexityClass;
use crate::learn::Sample;

/// `per_class` points per complexity class in five dimensions, class `k`
/// centered at `spacing · e_k` with isotropic noise `sigma`.
pub fn gaussian_blobs(per_class: usize, sigma: f64, spacing: f64, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).expect("sigma must be finite and non-negative");
    let mut out = Vec::with_capacity(per_class * 5);
    for (k, class) in ComplexityClass::ALL.into_iter().enumerate() {
        for i in 0..per_class {
            let features = (0..5)
                .map(|j| if j == k { spacing } else { 0.0 } + noise.sample(&mut rng))
                .collect();
            out.push(Sample::new(
                format!("{}-{i}", class.as_str()),
                features,
                class,
            ));
        }
    }
    out
}

struct Writer<'a> {
    rng: &'a mut ChaCha8Rng,
    body: Vec<String>,
    helpers: Vec<String>,
    imports: bool,
    /// Input style, fixed by the first read: Scanner or BufferedReader.
    scanner: Option<bool>,
}

const NAMES: &[&str] = &["n", "m", "k", "len", "size", "cnt", "limit", "total"];
const ACC: &[&str] = &["ans", "res", "sum", "best", "acc", "out", "value"];
const ARR: &[&str] = &["a", "arr", "nums", "vals", "data", "xs"];
const IDX: &[(&str, &str)] = &[("i", "j"), ("p", "q"), ("x", "y"), ("r", "c")];

impl Writer<'_> {
    fn pick<'b>(&mut self, pool: &[&'b str]) -> &'b str {
        pool.choose(self.rng).copied().unwrap()
    }

    fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    fn read_int(&mut self) -> &'static str {
        let rng = &mut *self.rng;
        if *self.scanner.get_or_insert_with(|| rng.gen_bool(0.5)) {
            "sc.nextInt()"
        } else {
            "Integer.parseInt(br.readLine().trim())"
        }
    }

    fn noise(&mut self, acc: &str) {
        match self.rng.gen_range(0..4) {
            0 => self.line(format!("if ({acc} < 0) {acc} = -{acc};")),
            1 => {
                let k = self.rng.gen_range(0..100);
                self.line(format!("int tmp{k} = {acc} % 7;"));
            }
            2 => self.line(format!("System.out.println(\"{acc}=\" + {acc});")),
            _ => {}
        }
    }

    fn dead_helper(&mut self) {
        if self.rng.gen_bool(0.3) {
            self.helpers.push(
                "    static void unusedHelper(int[] v) {\n        for (int u = 0; u < v.length; u++)\n            for (int w = 0; w < v.length; w++)\n                v[u] += v[w];\n    }"
                    .to_string(),
            );
        }
    }

    fn constant(&mut self) {
        let n = self.pick(NAMES);
        let acc = self.pick(ACC);
        let read = self.read_int();
        self.line(format!("long {n} = {read};"));
        match self.rng.gen_range(0..3) {
            0 => self.line(format!("long {acc} = {n} * ({n} + 1) / 2;")),
            1 => {
                self.line(format!(
                    "long {acc} = {n} % 2 == 0 ? {n} / 2 : 3 * {n} + 1;"
                ));
            }
            _ => {
                self.line(format!("long {acc};"));
                self.line(format!("if ({n} > 100) {{\n            {acc} = {n} - 100;\n        }} else {{\n            {acc} = 100 - {n};\n        }}"));
            }
        }
        if self.rng.gen_bool(0.25) {
            self.line(format!("for (int d = 0; d < 3; d++) {acc} += d;"));
        }
        self.noise(acc);
        self.line(format!("System.out.println({acc});"));
    }

    fn logarithmic(&mut self) {
        let n = self.pick(NAMES);
        let acc = self.pick(ACC);
        let read = self.read_int();
        self.line(format!("long {n} = {read};"));
        match self.rng.gen_range(0..3) {
            0 => {
                self.line(format!("int {acc} = 0;"));
                self.line(format!(
                    "while ({n} > 1) {{\n            {n} /= 2;\n            {acc}++;\n        }}"
                ));
            }
            1 => {
                self.line("long lo = 0, hi = 2000000000L;");
                self.line(format!("while (lo < hi) {{\n            long mid = (lo + hi) / 2;\n            if (mid * mid >= {n}) hi = mid;\n            else lo = mid + 1;\n        }}"));
                self.line(format!("long {acc} = lo;"));
            }
            _ => {
                self.line(format!("long {acc} = 1, base = 3, e = {n};"));
                self.line(format!("while (e > 0) {{\n            if ((e & 1) == 1) {acc} = {acc} * base % 1000000007L;\n            base = base * base % 1000000007L;\n            e >>= 1;\n        }}"));
            }
        }
        self.noise(acc);
        self.line(format!("System.out.println({acc});"));
    }

    fn read_array(&mut self, n: &str, a: &str) {
        let (i, _) = *IDX.choose(self.rng).unwrap();
        let read = self.read_int();
        self.line(format!("int {n} = {read};"));
        self.line(format!("int[] {a} = new int[{n}];"));
        self.line(format!(
            "for (int {i} = 0; {i} < {n}; {i}++) {a}[{i}] = {read};"
        ));
    }

    fn linear(&mut self) {
        let (n, a, acc) = (self.pick(NAMES), self.pick(ARR), self.pick(ACC));
        let (i, _) = *IDX.choose(self.rng).unwrap();
        if self.rng.gen_bool(0.25) {
            let read = self.read_int();
            self.line(format!("int {n} = {read};"));
            self.line(format!("long {acc} = 0;"));
            self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            {acc} += {read};\n        }}"));
            self.noise(acc);
            self.line(format!("System.out.println({acc});"));
            return;
        }
        self.read_array(n, a);
        match self.rng.gen_range(0..3) {
            0 => {
                self.line(format!("long {acc} = 0;"));
                self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            {acc} += {a}[{i}];\n        }}"));
            }
            1 => {
                self.imports = true;
                self.line("HashMap<Integer, Integer> freq = new HashMap<>();");
                self.line(format!(
                    "for (int v : {a}) freq.put(v, freq.getOrDefault(v, 0) + 1);"
                ));
                self.line(format!("int {acc} = freq.size();"));
            }
            _ => {
                self.imports = true;
                self.line("HashSet<Integer> seen = new HashSet<>();");
                self.line(format!("int {acc} = 0;"));
                self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            if (!seen.add({a}[{i}])) {{\n                {acc}++;\n                continue;\n            }}\n        }}"));
            }
        }
        self.noise(acc);
        self.line(format!("System.out.println({acc});"));
    }

    fn linearithmic(&mut self) {
        let (n, a, acc) = (self.pick(NAMES), self.pick(ARR), self.pick(ACC));
        let (i, _) = *IDX.choose(self.rng).unwrap();
        self.imports = true;
        self.read_array(n, a);
        match self.rng.gen_range(0..4) {
            3 => {
                self.line(format!("Arrays.sort({a});"));
                self.line(format!("long {acc} = {a}[{n} / 2];"));
            }
            0 => {
                self.line(format!("Arrays.sort({a});"));
                self.line(format!("long {acc} = 0;"));
                self.line(format!("for (int {i} = 1; {i} < {n}; {i}++) {acc} = Math.max({acc}, {a}[{i}] - {a}[{i} - 1]);"));
            }
            1 => {
                self.line("PriorityQueue<Long> pq = new PriorityQueue<>();");
                self.line(format!("for (int v : {a}) pq.add((long) v);"));
                self.line(format!("long {acc} = 0;"));
                self.line(format!("while (pq.size() > 1) {{\n            long s = pq.poll() + pq.poll();\n            {acc} += s;\n            pq.add(s);\n        }}"));
            }
            _ => {
                self.line(format!("long {acc} = 0;"));
                self.line(format!("for (int {i} = 1; {i} <= {n}; {i}++) {{\n            for (int step = {i}; step > 0; step /= 2) {{\n                {acc} += step & 1;\n            }}\n        }}"));
            }
        }
        self.noise(acc);
        self.line(format!("System.out.println({acc});"));
    }

    fn quadratic(&mut self) {
        let (n, a, acc) = (self.pick(NAMES), self.pick(ARR), self.pick(ACC));
        let (i, j) = *IDX.choose(self.rng).unwrap();
        self.read_array(n, a);
        self.line(format!("long {acc} = 0;"));
        match self.rng.gen_range(0..3) {
            0 => self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            for (int {j} = {i} + 1; {j} < {n}; {j}++) {{\n                if ({a}[{i}] > {a}[{j}]) {acc}++;\n            }}\n        }}")),
            1 => self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            int {j} = 0;\n            while ({j} < {i}) {{\n                {acc} += {a}[{j}] * {a}[{i}];\n                {j}++;\n            }}\n        }}")),
            _ => {
                self.line(format!("for (int {i} = 0; {i} < {n}; {i}++) {{\n            for (int {j} = 0; {j} + 1 < {n} - {i}; {j}++) {{\n                if ({a}[{j}] > {a}[{j} + 1]) {{\n                    int t = {a}[{j}];\n                    {a}[{j}] = {a}[{j} + 1];\n                    {a}[{j} + 1] = t;\n                    {acc}++;\n                }}\n            }}\n        }}"));
            }
        }
        self.noise(acc);
        self.line(format!("System.out.println({acc});"));
    }

    fn render(self) -> String {
        let mut src = String::new();
        if self.imports {
            src.push_str("import java.util.*;\n");
        }
        src.push_str("import java.io.*;\nimport java.util.Scanner;\n\npublic class Main {\n");
        src.push_str("    public static void main(String[] args) throws IOException {\n");
        match self.scanner {
            Some(true) => src.push_str("        Scanner sc = new Scanner(System.in);\n"),
            Some(false) => src.push_str(
                "        BufferedReader br = new BufferedReader(new InputStreamReader(System.in));\n",
            ),
            None => {}
        }
        for line in &self.body {
            src.push_str("        ");
            src.push_str(line);
            src.push('\n');
        }
        src.push_str("    }\n");
        for h in &self.helpers {
            src.push('\n');
            src.push_str(h);
            src.push('\n');
        }
        src.push_str("}\n");
        src
    }
}

/// One small contest-style Java program whose runtime class is `class`.
pub fn java_program(class: ComplexityClass, rng: &mut ChaCha8Rng) -> String {
    let mut w = Writer {
        rng,
        body: Vec::new(),
        helpers: Vec::new(),
        imports: false,
        scanner: None,
    };
    match class {
        ComplexityClass::O1 => w.constant(),
        ComplexityClass::OLogN => w.logarithmic(),
        ComplexityClass::ON => w.linear(),
        ComplexityClass::ONLogN => w.linearithmic(),
        ComplexityClass::ONSquare => w.quadratic(),
    }
    w.dead_helper();
    w.render()
}

/// `per_class` labeled programs for each class, ids `<class>/<nnnn>.java`.
pub fn java_corpus(per_class: usize, seed: u64) -> Vec<SourceUnit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(per_class * 5);
    for class in ComplexityClass::ALL {
        for i in 0..per_class {
            let text = java_program(class, &mut rng);
            out.push(SourceUnit::labeled(
                format!("{}/{i:04}.java", class.as_str()),
                text,
                class,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{parse_str, print};
    use crate::features::features_for_unit;

    #[test]
    fn generated_programs_parse_cleanly_and_round_trip() {
        for unit in java_corpus(12, 3) {
            let tree =
                parse_str(&unit.text).unwrap_or_else(|e| panic!("{}: {e}\n{}", unit.id, unit.text));
            assert!(
                !tree
                    .descendants()
                    .any(|n| matches!(n.kind, crate::ast::NodeKind::StatementOther)),
                "{}",
                unit.text
            );
            assert_eq!(
                parse_str(&print(&tree)).unwrap().without_spans(),
                tree.without_spans()
            );
        }
    }

    #[test]
    fn loop_depth_tracks_the_class() {
        for unit in java_corpus(10, 8) {
            let fv = features_for_unit(&unit).unwrap();
            let depth = fv.nested_loop_depth;
            match unit.label.unwrap() {
                ComplexityClass::ONSquare => assert_eq!(depth, 2, "{}", unit.text),
                ComplexityClass::O1 | ComplexityClass::OLogN => assert!(depth <= 1),
                _ => assert!((1..=2).contains(&depth)),
            }
        }
    }

    #[test]
    fn blobs_have_requested_shape() {
        let b = gaussian_blobs(3, 0.1, 10.0, 1);
        assert_eq!(b.len(), 15);
        assert!(b.iter().all(|s| s.features.len() == 5));
        assert!((b[0].features[0] - 10.0).abs() < 1.0);
    }
}
