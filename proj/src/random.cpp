#include "hamlab/random.hpp"

namespace hamlab {

auto set_hash_unit(std::uint64_t seed, const VertexSet& s) -> double {
    auto h = mix64(seed ^ 0xa0761d6478bd642fULL);
    for (std::size_t w = 0; w < s.word_count(); ++w) h = mix64(h ^ s.word(w));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

auto delete_random_edges(const Hypergraph& base, double rate, std::uint64_t seed) -> Hypergraph {
    require(rate >= 0.0 && rate <= 1.0, "deletion rate must lie in [0, 1]");
    auto parent = base.predicate();
    auto keep = [parent, rate, seed](const VertexSet& e) { return parent(e) && set_hash_unit(seed, e) >= rate; };
    if (base.structure() == Structure::kpartite_complete || base.structure() == Structure::kpartite_restricted) {
        return Hypergraph::kpartite_restricted(base.n(), base.parts(), keep);
    }
    return Hypergraph::implicit(base.n(), base.k(), Structure::predicate, keep);
}

auto random_family(int n, int k, double density, std::uint64_t seed) -> Hypergraph {
    require(density >= 0.0 && density <= 1.0, "density must lie in [0, 1]");
    return Hypergraph::implicit(n, k, Structure::predicate, [density, seed](const VertexSet& e) {
        return set_hash_unit(seed, e) < density;
    });
}

auto random_kpartite(int n, const std::vector<std::vector<Vertex>>& parts, double density, std::uint64_t seed) -> Hypergraph {
    require(density >= 0.0 && density <= 1.0, "density must lie in [0, 1]");
    return Hypergraph::kpartite_restricted(n, parts, [density, seed](const VertexSet& e) {
        return set_hash_unit(seed, e) < density;
    });
}

}  // namespace hamlab
