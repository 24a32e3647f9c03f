use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use alcove::bruhat::{downward_closure, length, random_element, BruhatCache};
use alcove::permissibility::{enumerate_admissible, enumerate_permissible};
use alcove::{CosetMode, DominantCochar, GroupContext, LevelStructure, PermKind};

fn bench_length(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ctx = GroupContext::Gu(3);
    let elems: Vec<_> = (0..64).map(|_| random_element(ctx, &mut rng, 12, 2)).collect();
    c.bench_function("length GU(3) x64", |b| b.iter(|| elems.iter().map(|w| length(black_box(w))).sum::<usize>()));
}

fn bench_closure(c: &mut Criterion) {
    let ctx = GroupContext::Gsp(2);
    let mu = DominantCochar::mu_rs(ctx, 1).unwrap();
    let seeds: Vec<_> = alcove::weyl_orbit(ctx, mu.entries())
        .unwrap()
        .iter()
        .map(|l| alcove::WeylElement::translation(ctx, l).unwrap())
        .collect();
    c.bench_function("closure GSp(2) mu=(2,1,1,0)", |b| b.iter(|| downward_closure(black_box(&seeds)).unwrap().len()));
}

fn bench_enumeration(c: &mut Criterion) {
    let ctx = GroupContext::Gu(2);
    let level = LevelStructure::iwahori(ctx);
    let mu = DominantCochar::mu_rs(ctx, 2).unwrap();
    c.bench_function("adm GU(2) s=2 Iwahori", |b| {
        b.iter(|| enumerate_admissible(&mu, &level, CosetMode::Left, &BruhatCache::new()).unwrap().len())
    });
    c.bench_function("spin GU(2) s=2 Iwahori", |b| {
        b.iter(|| enumerate_permissible(ctx, &PermKind::Spin { s: 2 }, &level, CosetMode::Left).unwrap().len())
    });
}

criterion_group!(benches, bench_length, bench_closure, bench_enumeration);
criterion_main!(benches);
