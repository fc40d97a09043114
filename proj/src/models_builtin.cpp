#include "latbraid/model.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <mutex>

// Built-in model fixtures. The triangulations and labelings were reconstructed
// from the published figures and flip-sequence tables and validated against the
// reference values (generator/operation counts, search maxima, invariant track
// coordinates); the loader revalidates all structural invariants.

namespace latbraid {

namespace {

const char* k_sq2 = R"__({"name":"sq2","lattice":"square","num_points":2,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":false,"ends":[0,0]},{"graph":false,"ends":[0,0]}],"triangles":[[[4,0,0],[3,0,1],[0,1,0]],[[5,0,0],[1,0,1],[3,1,0]],[[4,0,0],[2,0,1],[1,1,0]],[[5,0,0],[0,0,1],[2,1,0]]],"example_generator":{"edge":1,"flip_sequence":"6,3,5,6',1,5',6'',4,5''","relabel":[0,1,2,3,4,5],"chirality":1},"symmetries":[{"name":"R","edge_perm":[3,2,0,1,5,4],"aux_flips":[],"orientation":1},{"name":"M","edge_perm":[0,1,3,2,5,4],"aux_flips":[],"orientation":-1}],"initial_coords":[2,2,1,1,4,1],"alt_initial_coords":[[2,1,3,2,4,1],[0,0,1,1,1,1],[1,0,1,2,1,2]]})__";

const char* k_sq4 = R"__({"name":"sq4","lattice":"square","num_points":4,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[1,3]},{"graph":true,"ends":[2,3]},{"graph":true,"ends":[0,2]},{"graph":false,"ends":[1,2]},{"graph":true,"ends":[1,3]},{"graph":true,"ends":[0,2]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[2,3]},{"graph":false,"ends":[0,3]},{"graph":false,"ends":[0,3]},{"graph":false,"ends":[1,2]}],"triangles":[[[0,0,1],[4,1,2],[3,2,0]],[[1,1,3],[2,3,2],[4,2,1]],[[2,2,3],[10,3,0],[6,0,2]],[[5,3,1],[0,1,0],[10,0,3]],[[7,1,0],[9,0,3],[1,3,1]],[[3,0,2],[8,2,3],[9,3,0]],[[8,3,2],[11,2,1],[5,1,3]],[[6,2,0],[7,0,1],[11,1,2]]],"example_generator":{"edge":0,"flip_sequence":"4,6,8,10,12,7,2,8'","relabel":[0,11,2,4,1,10,9,7,8,3,6,5],"chirality":-1},"symmetries":[{"name":"tx","edge_perm":[7,3,8,1,9,6,5,0,2,4,11,10],"aux_flips":[],"orientation":1},{"name":"ty","edge_perm":[2,5,0,6,10,1,3,8,7,11,4,9],"aux_flips":[],"orientation":1},{"name":"r90","edge_perm":[3,8,1,7,9,2,0,6,5,11,4,10],"aux_flips":[4,10,9,11],"orientation":1},{"name":"mir","edge_perm":[3,2,1,0,4,8,7,6,5,10,9,11],"aux_flips":[],"orientation":-1}],"initial_coords":[0,0,1,1,1,1,0,1,0,1,1,1],"alt_initial_coords":[[0,1,0,1,1,0,0,0,0,1,0,0],[1,0,1,0,1,1,1,1,1,1,2,2]]})__";

const char* k_tri3 = R"__({"name":"tri3","lattice":"triangular","num_points":3,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,2]},{"graph":true,"ends":[0,2]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[0,2]}],"triangles":[[[1,0,1],[5,1,2],[4,2,0]],[[8,0,2],[6,2,1],[1,1,0]],[[3,2,0],[0,0,1],[6,1,2]],[[5,2,1],[2,1,0],[3,0,2]],[[7,1,2],[8,2,0],[2,0,1]],[[0,1,0],[4,0,2],[7,2,1]]],"example_generator":{"edge":1,"flip_sequence":"1,3,6,9,4,8,1',3'","relabel":[0,1,2,8,3,4,7,5,6],"chirality":1},"symmetries":[{"name":"rho","edge_perm":[3,4,8,2,0,7,5,6,1],"aux_flips":[],"orientation":1},{"name":"tu","edge_perm":[5,7,6,1,2,8,4,3,0],"aux_flips":[],"orientation":1},{"name":"mir","edge_perm":[8,4,3,2,1,5,7,6,0],"aux_flips":[],"orientation":-1}],"initial_coords":[1,1,0,1,0,1,0,1,1],"alt_initial_coords":[[1,0,0,1,1,1,0,0,0],[1,2,1,1,0,2,0,1,2]]})__";

const char* k_tri4 = R"__({"name":"tri4","lattice":"triangular","num_points":4,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,2]},{"graph":true,"ends":[2,3]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[0,3]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[0,3]},{"graph":true,"ends":[1,3]},{"graph":true,"ends":[0,2]},{"graph":true,"ends":[2,3]},{"graph":true,"ends":[1,3]}],"triangles":[[[1,0,1],[4,1,2],[9,2,0]],[[7,0,3],[11,3,1],[1,1,0]],[[10,2,3],[7,3,0],[2,0,2]],[[4,2,1],[8,1,3],[10,3,2]],[[0,1,0],[5,0,3],[8,3,1]],[[6,1,2],[2,2,0],[0,0,1]],[[3,3,2],[6,2,1],[11,1,3]],[[5,3,0],[9,0,2],[3,2,3]]],"example_generator":{"edge":1,"flip_sequence":"1,5,8,3,9,6,7,1'","relabel":[0,1,7,3,9,2,8,11,4,5,10,6],"chirality":1},"symmetries":[{"name":"rho","edge_perm":[2,9,7,8,3,0,10,1,6,5,11,4],"aux_flips":[],"orientation":1},{"name":"tu","edge_perm":[1,0,11,10,5,4,7,6,9,8,3,2],"aux_flips":[],"orientation":1},{"name":"tv","edge_perm":[3,10,9,0,7,6,5,4,11,2,1,8],"aux_flips":[],"orientation":1},{"name":"mir","edge_perm":[2,9,0,11,4,7,6,5,10,1,8,3],"aux_flips":[],"orientation":-1}],"initial_coords":[1,0,0,0,1,1,1,1,0,1,1,1],"alt_initial_coords":[[0,0,0,0,1,1,0,0,1,1,0,0],[1,0,1,1,1,2,2,1,1,1,0,1]]})__";

const char* k_hex2 = R"__({"name":"hex2","lattice":"hexagonal","num_points":2,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,1]},{"graph":false,"ends":[0,0]},{"graph":false,"ends":[0,0]},{"graph":false,"ends":[0,0]}],"triangles":[[[0,0,1],[1,1,0],[4,0,0]],[[2,0,1],[0,1,0],[3,0,0]],[[1,0,1],[2,1,0],[5,0,0]],[[4,0,0],[3,0,0],[5,0,0]]],"example_generator":{"edge":0,"flip_sequence":"2,4,3,6,5,2',3',4'","relabel":[0,5,4,2,3,1],"chirality":1},"symmetries":[{"name":"rho","edge_perm":[2,0,1,5,3,4],"aux_flips":[],"orientation":1},{"name":"mir","edge_perm":[0,2,1,4,3,5],"aux_flips":[],"orientation":-1}],"initial_coords":[0,1,1,1,1,2],"alt_initial_coords":[[1,0,1,0,1,1],[1,1,2,1,2,3]]})__";

const char* k_hex6 = R"__({"name":"hex6","lattice":"hexagonal","num_points":6,"edges":[{"graph":true,"ends":[0,1]},{"graph":true,"ends":[0,5]},{"graph":true,"ends":[2,3]},{"graph":true,"ends":[3,4]},{"graph":true,"ends":[4,5]},{"graph":true,"ends":[0,3]},{"graph":true,"ends":[1,2]},{"graph":true,"ends":[2,5]},{"graph":true,"ends":[1,4]},{"graph":false,"ends":[0,2]},{"graph":false,"ends":[0,4]},{"graph":false,"ends":[2,4]},{"graph":false,"ends":[0,4]},{"graph":false,"ends":[2,4]},{"graph":false,"ends":[0,2]},{"graph":false,"ends":[2,4]},{"graph":false,"ends":[0,2]},{"graph":false,"ends":[0,4]}],"triangles":[[[0,0,1],[6,1,2],[9,2,0]],[[2,2,3],[3,3,4],[11,4,2]],[[4,4,5],[1,5,0],[10,0,4]],[[9,0,2],[11,2,4],[10,4,0]],[[7,2,5],[4,5,4],[13,4,2]],[[8,4,1],[0,1,0],[17,0,4]],[[5,0,3],[2,3,2],[16,2,0]],[[13,2,4],[17,4,0],[16,0,2]],[[3,4,3],[5,3,0],[12,0,4]],[[1,0,5],[7,5,2],[14,2,0]],[[6,2,1],[8,1,4],[15,4,2]],[[12,4,0],[14,0,2],[15,2,4]]],"example_generator":{"edge":0,"flip_sequence":"11,17,18,6,7,9,13,15,2,9',11',17'","relabel":[0,14,2,3,4,17,9,7,6,1,10,11,5,13,12,15,16,8],"chirality":1},"symmetries":[{"name":"rho","edge_perm":[1,5,6,8,3,0,7,2,4,14,12,15,17,11,16,13,9,10],"aux_flips":[],"orientation":1},{"name":"tu","edge_perm":[3,8,1,7,6,4,5,0,2,12,15,14,13,9,17,16,10,11],"aux_flips":[],"orientation":1},{"name":"mir","edge_perm":[3,4,6,0,1,8,2,7,5,11,10,9,17,14,13,16,15,12],"aux_flips":[],"orientation":-1}],"initial_coords":[1,0,0,1,1,1,1,1,0,0,1,1,0,0,1,1,1,1],"alt_initial_coords":[[0,0,1,0,1,0,0,0,0,0,1,1,0,1,0,0,1,0],[0,1,1,0,1,0,1,1,1,1,2,1,0,0,2,2,1,1]]})__";

const char* k_all[] = {k_sq2, k_sq4, k_tri3, k_tri4, k_hex2, k_hex6};

unsigned long long fnv1a(const char* s) {
    unsigned long long h = 1469598103934665603ull;
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= 1099511628211ull;
    }
    return h;
}

constexpr unsigned long long kBuiltinChecksum = 17957863268215263685ull;

}  // namespace

const std::vector<std::string>& builtin_model_names() {
    static const std::vector<std::string> names{"sq2", "sq4", "tri3", "tri4", "hex2", "hex6"};
    return names;
}

unsigned long long builtin_fixture_checksum() {
    unsigned long long h = 0;
    for (const char* s : k_all) h ^= fnv1a(s);
    return h;
}

const LatticeModel& builtin_model(const std::string& name) {
    static std::map<std::string, LatticeModel> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    const auto& names = builtin_model_names();
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            if (builtin_fixture_checksum() != kBuiltinChecksum)
                throw std::runtime_error("builtin model fixtures corrupted (checksum mismatch)");
            auto j = nlohmann::json::parse(k_all[i]);
            return cache.emplace(name, LatticeModel::from_json(j)).first->second;
        }
    }
    throw std::invalid_argument("unknown builtin model: " + name +
                                " (expected one of sq2, sq4, tri3, tri4, hex2, hex6)");
}

}  // namespace latbraid
