use deckrecon::adversary::{forge_collection, parse_mixed, serialize_mixed, ForgeStrategy};
use deckrecon::rng::{below, seeded, split_seed};
use deckrecon::{canonical_form, deal, drop_cards, gen_graph, parse_deck, serialize_deck, DropStrategy, Model, PartialDeck};

fn sorted_forms(deck: &PartialDeck) -> Vec<Vec<u8>> {
    let mut f: Vec<Vec<u8>> = deck.graphs().map(|g| canonical_form(g).unwrap().as_bytes().to_vec()).collect();
    f.sort();
    f
}

#[test]
fn random_decks_round_trip() {
    for i in 0..100u64 {
        let mut pick = seeded(split_seed(40, i));
        let n = 3 + below(&mut pick, 60);
        let k = below(&mut pick, n - 1);
        let g = gen_graph(&Model::Gnp(0.3), n, split_seed(41, i)).unwrap();
        let deck = drop_cards(&deal(&g).unwrap(), k, DropStrategy::Random, i).unwrap();
        let text = serialize_deck(&deck);
        let back = parse_deck(&text).unwrap();
        assert_eq!(back.original_order(), n);
        assert_eq!(back.len(), n - k);
        assert_eq!(sorted_forms(&back), sorted_forms(&deck));
        assert_eq!(serialize_deck(&back), text);
    }
}

#[test]
fn file_does_not_depend_on_card_order() {
    let g = gen_graph(&Model::Gnp(0.5), 20, 3).unwrap();
    let deck = deal(&g).unwrap();
    assert_eq!(serialize_deck(&deck), serialize_deck(&deck.clone().shuffled(9)));
}

#[test]
fn mixed_collections_round_trip() {
    let g = gen_graph(&Model::Regular(3), 30, 1).unwrap();
    let (c, _) = forge_collection(&g, 2, ForgeStrategy::RandomGnp, 5).unwrap();
    let text = serialize_mixed(&c);
    assert!(text.starts_with("MIXED n=30 cards=30 kfalse=2\n"));
    let back = parse_mixed(&text).unwrap();
    assert_eq!(back.k_false(), 2);
    assert_eq!(serialize_mixed(&back), text);
}

#[test]
fn malformed_files_are_rejected() {
    let good = serialize_deck(&deal(&gen_graph(&Model::Path, 5, 0).unwrap()).unwrap());
    assert!(parse_deck("").is_err());
    assert!(parse_deck(&good.replacen("cards=5", "cards=4", 1)).is_err());
    assert!(parse_deck(&good.replacen("n=5", "n=6", 1)).is_err());
    assert!(parse_deck(&good.replacen("DECK", "DEKC", 1)).is_err());
    let mut lines: Vec<&str> = good.lines().collect();
    lines[2] = "@@@";
    assert!(parse_deck(&lines.join("\n")).is_err());
}
