use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::synth::gaussian_blobs;
use ComplexityClass::*;

fn blob_split() -> DatasetSplit {
    stratified_split(&gaussian_blobs(40, 0.1, 10.0, 5), 0.8, 42).unwrap()
}

fn accuracy(model: &TrainedModel, data: &[Sample]) -> f64 {
    evaluate(model, data).unwrap().accuracy
}

#[test]
fn every_algorithm_separates_blobs() {
    let split = blob_split();
    for algorithm in Algorithm::ALL {
        let model = train(&ClassifierSpec::new(algorithm), &split.train).unwrap();
        let acc = accuracy(&model, &split.test);
        assert!(acc >= 95.0, "{algorithm}: {acc}");
    }
}

#[test]
fn one_nearest_neighbor_recalls_training_set() {
    let data = gaussian_blobs(10, 2.0, 1.0, 9);
    let model = train(&ClassifierSpec::new(Algorithm::Knn).with("k", 1.0), &data).unwrap();
    assert_eq!(accuracy(&model, &data), 100.0);
}

#[test]
fn knn_vote_tie_goes_to_lowest_class() {
    let data = vec![
        Sample::new("a", vec![-1.0], ON),
        Sample::new("b", vec![1.0], O1),
        Sample::new("c", vec![10.0], ONSquare),
    ];
    let model = train(&ClassifierSpec::new(Algorithm::Knn).with("k", 2.0), &data).unwrap();
    assert_eq!(model.predict(&[0.0]).unwrap(), O1);
}

#[test]
fn decision_tree_fits_duplicate_free_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let data: Vec<Sample> = (0..150)
        .map(|i| {
            let x = vec![
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..1.0),
                f64::from(i % 3),
            ];
            Sample::new(i.to_string(), x, ComplexityClass::ALL[rng.gen_range(0..5)])
        })
        .collect();
    let model = train(&ClassifierSpec::new(Algorithm::DecisionTree), &data).unwrap();
    assert_eq!(accuracy(&model, &data), 100.0);
}

#[test]
fn decision_tree_split_ties_prefer_lower_feature() {
    // Both columns separate the classes perfectly.
    let data = vec![
        Sample::new("a", vec![0.0, 0.0], O1),
        Sample::new("b", vec![1.0, 1.0], ON),
    ];
    let model = train(&ClassifierSpec::new(Algorithm::DecisionTree), &data).unwrap();
    let Inner::Tree(tree) = &model.inner else {
        panic!()
    };
    assert_eq!(tree.depth(), 1);
    assert_eq!(model.predict(&[0.0, 1.0]).unwrap(), O1);
    assert_eq!(model.predict(&[1.0, 0.0]).unwrap(), ON);
}

#[test]
fn logistic_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x: Vec<Vec<f64>> = (0..12)
        .map(|_| (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let y: Vec<usize> = (0..12).map(|i| i % 3).collect();
    for _ in 0..5 {
        let params: Vec<f64> = (0..15).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, grad) = softmax_loss_and_gradient(&params, &x, &y, 3, 1e-2);
        for i in 0..params.len() {
            let h = 1e-5;
            let mut plus = params.clone();
            let mut minus = params.clone();
            plus[i] += h;
            minus[i] -= h;
            let numeric = (softmax_loss_and_gradient(&plus, &x, &y, 3, 1e-2).0
                - softmax_loss_and_gradient(&minus, &x, &y, 3, 1e-2).0)
                / (2.0 * h);
            let rel = (numeric - grad[i]).abs() / numeric.abs().max(grad[i].abs()).max(1e-8);
            assert!(rel < 1e-4, "param {i}: {numeric} vs {}", grad[i]);
        }
    }
}

#[test]
fn same_seed_same_predictions() {
    let split = blob_split();
    let noisy = gaussian_blobs(20, 4.0, 3.0, 1);
    for algorithm in Algorithm::ALL {
        let a = train(&ClassifierSpec::new(algorithm), &split.train).unwrap();
        let b = train(&ClassifierSpec::new(algorithm), &split.train).unwrap();
        assert_eq!(a, b, "{algorithm}");
        assert_eq!(
            a.predict_all(&noisy).unwrap(),
            b.predict_all(&noisy).unwrap()
        );
        assert_eq!(
            evaluate(&a, &split.test).unwrap(),
            evaluate(&a, &split.test).unwrap()
        );
    }
}

#[test]
fn model_files_round_trip() {
    let split = blob_split();
    for algorithm in Algorithm::ALL {
        let model = train(&ClassifierSpec::new(algorithm).with_seed(3), &split.train).unwrap();
        let mut buf = Vec::new();
        save_model(&model, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"RTCM");
        assert_eq!(buf[6], algorithm.tag());
        assert_eq!(load_model(buf.as_slice()).unwrap(), model);
    }
    assert!(matches!(
        load_model(&b"NOPE\x01\x00\x00{}"[..]),
        Err(ModelIoError::BadMagic)
    ));
}

#[test]
fn training_errors() {
    let one_class = vec![
        Sample::new("a", vec![1.0], O1),
        Sample::new("b", vec![2.0], O1),
    ];
    assert!(matches!(
        train(&ClassifierSpec::new(Algorithm::Knn), &one_class),
        Err(LearnError::DegenerateData(_))
    ));

    let ragged = vec![
        Sample::new("a", vec![1.0], O1),
        Sample::new("b", vec![2.0, 3.0], ON),
    ];
    assert_eq!(
        train(&ClassifierSpec::new(Algorithm::Knn), &ragged),
        Err(LearnError::DimensionMismatch {
            expected: 1,
            found: 2
        })
    );
    assert_eq!(
        train(&ClassifierSpec::new(Algorithm::Knn), &[]),
        Err(LearnError::EmptyData)
    );

    let ok = vec![
        Sample::new("a", vec![1.0], O1),
        Sample::new("b", vec![2.0], ON),
    ];
    let bad = ClassifierSpec::new(Algorithm::Knn).with("depth", 3.0);
    assert!(matches!(
        train(&bad, &ok),
        Err(LearnError::BadHyperparameter { .. })
    ));
    let model = train(&ClassifierSpec::new(Algorithm::Knn).with("k", 1.0), &ok).unwrap();
    assert_eq!(
        model.predict(&[1.0, 2.0]),
        Err(LearnError::DimensionMismatch {
            expected: 1,
            found: 2
        })
    );
    assert!(matches!(
        "boosting".parse::<Algorithm>(),
        Err(LearnError::UnknownAlgorithm(_))
    ));
}

#[test]
fn weighted_recall_equals_accuracy() {
    let split = stratified_split(&gaussian_blobs(30, 3.0, 2.0, 8), 0.7, 1).unwrap();
    for algorithm in Algorithm::ALL {
        let model = train(&ClassifierSpec::new(algorithm), &split.train).unwrap();
        let r = evaluate(&model, &split.test).unwrap();
        assert_eq!(r.weighted_recall, r.accuracy);
        for (i, row) in r.confusion_matrix.iter().enumerate() {
            let support = split.test.iter().filter(|s| s.label.index() == i).count() as u64;
            assert_eq!(row.iter().sum::<u64>(), support);
        }
    }
}

#[test]
fn constant_feature_scores_the_majority_rate() {
    let mut corpus = Vec::new();
    for (class, n) in [(O1, 30), (ON, 10), (ONSquare, 10)] {
        for i in 0..n {
            corpus.push(Sample::new(
                format!("{class}{i}"),
                vec![7.0, f64::from(i)],
                class,
            ));
        }
    }
    let cfg = ExperimentConfig::default();
    let means = per_feature_analysis(&corpus, &cfg).unwrap();
    assert_eq!(means.len(), 2);
    assert!((means[0] - 60.0).abs() < 1e-9, "{}", means[0]);
}

#[test]
fn class_subsets() {
    let corpus = gaussian_blobs(15, 0.5, 10.0, 2);
    let cfg = ExperimentConfig {
        algorithms: vec![Algorithm::NaiveBayes, Algorithm::DecisionTree],
        ..Default::default()
    };
    assert!(matches!(
        class_subset_experiment(&corpus, &[O1], &cfg),
        Err(LearnError::ClassTooSmall { .. })
    ));

    let full = class_subset_experiment(&corpus, &ComplexityClass::ALL, &cfg).unwrap();
    assert_eq!(full, run_grid(&cfg.split(&corpus).unwrap(), &cfg).unwrap());

    let three = class_subset_experiment(&corpus, &[O1, ON, ONSquare], &cfg).unwrap();
    for row in three {
        let total: u64 = row.report.confusion_matrix.iter().flatten().sum();
        assert_eq!(total, 9);
        assert_eq!(
            row.report.confusion_matrix[OLogN.index()]
                .iter()
                .sum::<u64>(),
            0
        );
    }
}
