//! Parses a Java file (or a built-in sample), prints an outline of the syntax
//! tree, the call graph, and the methods reachable from `main`.
//!
//!     cargo run --example parse_java -- path/to/Main.java

use runtime_complexity::ast::{build_call_graph, parse_str, print, reachable_from_main, AstNode};

const SAMPLE: &str = r#"
import java.util.*;

public class Main {
    static int gcd(int a, int b) {
        return b == 0 ? a : gcd(b, a % b);
    }

    static void unused() {
        for (int i = 0; i < 10; i++) System.out.println(i);
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int g = 0;
        for (int i = 0; i < n; i++) {
            g = gcd(g, sc.nextInt());
        }
        System.out.println(g);
    }
}
"#;

fn outline(node: &AstNode, depth: usize) {
    let value = node.value().map(|v| format!(" `{v}`")).unwrap_or_default();
    println!(
        "{:indent$}{}{value}",
        "",
        node.kind.as_str(),
        indent = 2 * depth
    );
    for child in &node.children {
        outline(child, depth + 1);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let tree = parse_str(&text)?;
    outline(&tree, 0);

    let cg = build_call_graph(&tree);
    println!("\ncall graph:");
    for (from, targets) in &cg.edges {
        let names: Vec<String> = targets
            .iter()
            .map(|t| format!("{}/{}", t.id().name, t.id().arity))
            .collect();
        println!("  {}/{} -> {}", from.name, from.arity, names.join(", "));
    }
    let reachable: Vec<String> = reachable_from_main(&cg)
        .iter()
        .map(|m| format!("{}/{}", m.name, m.arity))
        .collect();
    println!("reachable from main: {}", reachable.join(", "));

    let printed = print(&tree);
    assert_eq!(parse_str(&printed)?.without_spans(), tree.without_spans());
    println!(
        "\npretty-printed ({} nodes, round trip ok):\n{printed}",
        tree.node_count()
    );
    Ok(())
}
