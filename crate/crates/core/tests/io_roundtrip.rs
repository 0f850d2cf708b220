mod common;

use common::move2d;
use pointgame::game::{Tdpg, Tipg};
use pointgame::io::{parse_game, read_game, render_game, write_game, write_profile_csv, Game, GameDocument, IoError};
use pointgame::profile::{argument_pairs, geometric_arguments, target_move, ProfileTable};
use pointgame::rational::rat;
use proptest::prelude::*;

fn document() -> impl Strategy<Value = GameDocument> {
    prop_oneof![
        move2d().prop_map(|m| GameDocument::new(Game::Move(m))),
        (move2d(), move2d()).prop_map(|(a, b)| GameDocument::new(Game::Tipg(Tipg::new(a, b))).with_tau(rat(1, 3))),
        prop::collection::vec(move2d(), 0..4).prop_map(|ms| GameDocument::new(Game::Tdpg(Tdpg::new(ms)))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn documents_round_trip(doc in document()) {
        let text = render_game(&doc);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render_game(&back), text);
    }
}

#[test]
fn file_round_trip_and_errors() {
    let dir = std::env::temp_dir().join(format!("pointgame-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let doc = GameDocument::new(Game::Move(target_move(&rat(1, 2)).unwrap()));
    write_game(&doc, &path).unwrap();
    assert_eq!(read_game(&path).unwrap(), doc);
    assert!(matches!(read_game(dir.join("missing.json")), Err(IoError::Io { .. })));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_game("{\n  \"kind\": \"move2d\",\n  \"entries\": [\n    {\"x\": 1}\n  ]\n}") {
        Err(IoError::Syntax { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_game(r#"{"kind":"square","entries":[]}"#), Err(IoError::Parse { .. })));
    assert!(matches!(parse_game(r#"{"kind":"tipg","entries":[]}"#), Err(IoError::Parse { .. })));
}

#[test]
fn profile_csv_is_byte_stable() {
    let t = target_move(&rat(1, 10)).unwrap();
    let pairs = argument_pairs(&geometric_arguments(6, 100.0));
    let render = || {
        let mut buf = Vec::new();
        write_profile_csv(&ProfileTable::evaluate(&t, &pairs), &mut buf).unwrap();
        buf
    };
    let a = render();
    assert_eq!(a, render());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("alpha,beta,value,value_float\n1,1,0,0\n"));
    assert!(text.contains("inf,inf,2,2\n"));
}
