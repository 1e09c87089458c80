use criterion::{black_box, criterion_group, criterion_main, Criterion};
use levels_core::chfset::universe_chf;
use levels_core::games;
use levels_core::interp::{self, RoundTripOptions};
use levels_core::models::{self, check_axioms, AxiomSuite, CheckOptions};
use levels_core::{Caps, Structure};

fn sets(c: &mut Criterion) {
    let caps = Caps::default();
    c.bench_function("universe_chf(3)", |b| {
        b.iter(|| universe_chf(black_box(3), &caps).unwrap())
    });
    c.bench_function("v_elements(5)", |b| {
        b.iter(|| levels_core::hfset::v_elements(black_box(5), &caps).unwrap())
    });
}

fn checking(c: &mut Criterion) {
    let caps = Caps::default();
    let (_, v4) = models::lt_universe(4, &caps).unwrap();
    let v4: Structure = v4.into();
    let (_, u2) = models::blt_universe(2, &caps).unwrap();
    let u2: Structure = u2.into();
    let opts = CheckOptions::default();
    c.bench_function("check LT on V_4", |b| {
        b.iter(|| check_axioms(&v4, AxiomSuite::LT, &opts).unwrap())
    });
    c.bench_function("check BLT on U_2", |b| {
        b.iter(|| check_axioms(&u2, AxiomSuite::BLT, &opts).unwrap())
    });
    c.bench_function("enumerate 4-element LT models", |b| {
        b.iter(|| models::enumerate_structures(4, AxiomSuite::LT, &opts).unwrap())
    });
}

fn interpretation(c: &mut Criterion) {
    c.bench_function("round trips depth 2", |b| {
        b.iter(|| interp::verify_round_trips(2, &RoundTripOptions::default()).unwrap())
    });
}

fn game_arith(c: &mut Criterion) {
    let caps = Caps::default();
    let pool = games::sample_games(3, 300, 1, &caps).unwrap();
    c.bench_function("game laws on 100 sampled triples", |b| {
        b.iter(|| games::check_group_laws(pool.chunks_exact(3).map(|t| (t[0], t[1], t[2]))))
    });
    let ladder = games::dyadic_ladder(2);
    c.bench_function("surreal products on day 2", |b| {
        b.iter(|| {
            for &(_, x) in &ladder {
                for &(_, y) in &ladder {
                    black_box(games::surreal_mul(x, y).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, sets, checking, interpretation, game_arith);
criterion_main!(benches);
