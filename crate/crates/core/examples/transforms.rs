//! Shows the three source transforms used by the ablation study on one
//! program: identifier renaming, constant inputs, and substructure removal.

use runtime_complexity::ablation::{constant_inputs, remove_substructures, rename_identifiers};
use runtime_complexity::ast::SourceUnit;
use runtime_complexity::features::features_for_unit;

const SAMPLE: &str = r#"
import java.util.*;
public class Main {
    static long total(int[] values) {
        long sum = 0;
        for (int v : values) sum += v;
        return sum;
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = Integer.parseInt(sc.nextLine().trim());
        int[] values = new int[n];
        for (int i = 0; i < n; i++) {
            values[i] = sc.nextInt();
            if (values[i] < 0) values[i] = -values[i];
        }
        System.out.println(total(values));
    }
}
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let unit = SourceUnit::new("sample", SAMPLE);
    let renamed = rename_identifiers(&unit)?;
    println!("--- renamed ---\n{}", renamed.text);
    assert_eq!(features_for_unit(&renamed)?, features_for_unit(&unit)?);

    println!("--- constant inputs ---\n{}", constant_inputs(&unit)?.text);

    for seed in 0..3 {
        let removed = remove_substructures(&unit, 0.5, seed)?;
        let fv = features_for_unit(&removed)?;
        println!(
            "--- removal p=0.5 seed {seed}: loops {} ifs {} ---",
            fv.number_of_loops, fv.number_of_ifs
        );
    }
    Ok(())
}
