//! Turns a program into a labeled graph under both labeling schemes and
//! counts the Weisfeiler-Lehman rooted subgraphs at each depth.

use runtime_complexity::ast::parse_str;
use runtime_complexity::embed::{
    ast_to_graph, extract_rooted_subgraphs, LabelMode, SubgraphVocabulary,
};

const SAMPLE: &str = r#"
public class Main {
    public static void main(String[] args) {
        int n = 8, count = 0;
        while (n > 1) {
            n /= 2;
            count++;
        }
        System.out.println(count);
    }
}
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = parse_str(SAMPLE)?;
    for mode in [LabelMode::Concatenated, LabelMode::Selective] {
        let g = ast_to_graph(&tree, mode);
        println!(
            "{mode:?}: {} nodes, first labels {:?}",
            g.node_count(),
            &g.labels()[..6]
        );
        let depth = 3;
        let subgraphs = extract_rooted_subgraphs(&g, depth);
        for d in 0..=depth {
            let level = &subgraphs[d * g.node_count()..(d + 1) * g.node_count()];
            let mut distinct = level.to_vec();
            distinct.sort();
            distinct.dedup();
            println!(
                "  depth {d}: {} distinct of {}, e.g. {}",
                distinct.len(),
                level.len(),
                level[0]
            );
        }
        let vocab = SubgraphVocabulary::build(&[subgraphs], 1);
        println!(
            "  vocabulary size {}, tokens {}",
            vocab.len(),
            vocab.total_count()
        );
    }
    Ok(())
}
