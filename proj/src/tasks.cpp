// Copyright 2026 The qtransfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qtransfer/tasks.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qtransfer/error.hpp"

#ifndef QTRANSFER_DEFAULT_DATA_DIR
#define QTRANSFER_DEFAULT_DATA_DIR "data"
#endif

namespace qtransfer {

namespace {

constexpr double kIsingCoupling = 1.0;
constexpr double kTransverseField = 2.0;
constexpr double kXxzCoupling = 1.0;
constexpr double kXxzAnisotropy = 2.0;

constexpr const char *kH2File = "h2_sto3g.txt";
constexpr const char *kH3File = "h3_sto3g.txt";

std::string fmt_num(double v) { return format_double(v, 6); }

ProblemSpec tfim_problem(std::size_t n, std::size_t layers, Boundary boundary, Entangler ent) {
    ProblemSpec p;
    p.description = "TFIM chain n=" + std::to_string(n) + " J=" + fmt_num(kIsingCoupling) +
                    " h=" + fmt_num(kTransverseField) + " " + to_string(boundary);
    p.hamiltonian = build_tfim(n, kIsingCoupling, kTransverseField, boundary);
    p.ansatz = AnsatzKind::HEA;
    p.entangler = ent;
    p.layers = layers;
    return p;
}

ProblemSpec xxz_problem(const Lattice &lattice, AnsatzKind ansatz, std::size_t layers,
                        Boundary boundary, Entangler ent) {
    ProblemSpec p;
    const std::string geometry =
        lattice.is_chain() ? "chain n=" + std::to_string(lattice.num_sites())
                           : "grid " + std::to_string(lattice.rows()) + "x" +
                                 std::to_string(lattice.cols());
    p.description = "XXZ " + geometry + " J=" + fmt_num(kXxzCoupling) +
                    " delta=" + fmt_num(kXxzAnisotropy) + " " + to_string(boundary);
    auto model = build_xxz(lattice, kXxzCoupling, kXxzAnisotropy, boundary);
    p.hamiltonian = model.hamiltonian;
    if (ansatz != AnsatzKind::HEA) {
        p.parts.assign(model.parts.begin(), model.parts.end());
    }
    p.ansatz = ansatz;
    p.entangler = ent;
    p.layers = layers;
    return p;
}

std::optional<ProblemSpec> chemistry_problem(const std::filesystem::path &file, std::size_t layers,
                                             std::string name, Entangler ent) {
    if (!std::filesystem::exists(file)) {
        return std::nullopt;
    }
    auto text = load_hamiltonian_file(file);
    ProblemSpec p;
    p.description = std::move(name) + " STO-3G Jordan-Wigner (" + file.filename().string() + ")";
    p.hamiltonian = text.hamiltonian;
    p.reference_energy = text.reference_energy;
    p.ansatz = AnsatzKind::HEA;
    p.entangler = ent;
    p.layers = layers;
    return p;
}

TaskSpec make_task(char id, const TaskConfig &config) {
    TaskSpec t;
    t.id = id;
    t.success_threshold = config.success_threshold;
    t.target_successes = config.target_successes;
    t.chain_boundary = config.chain_boundary;
    t.grid_boundary = config.grid_boundary;
    const std::size_t base_layers = config.base_layers.value_or(4);
    const Boundary chain = config.chain_boundary;
    const Entangler ent = config.hea_entangler;

    switch (id) {
    case 'A':
    case 'B': {
        const std::size_t m = id == 'A' ? 6 : 8;
        t.base = tfim_problem(4, base_layers, chain, ent);
        t.target = tfim_problem(m, base_layers, chain, ent);
        t.transfer = TransferMethod::Network;
        t.string_length = m - 4 + 1;
        t.allowed_init_strings = id == 'A'
                                     ? std::vector<std::string>{"TTT", "RRT", "TTR", "RRR"}
                                     : std::vector<std::string>{"TTTTT", "TRTRT", "RTRTR", "RRRRR"};
        break;
    }
    case 'C': {
        t.transfer = TransferMethod::Structure;
        t.string_length = 2;
        t.allowed_init_strings = {"TT", "TR", "RT", "RR"};
        const std::size_t target_layers = config.target_layers.value_or(8);
        auto base = chemistry_problem(config.chemistry_dir / kH2File, base_layers, "H2", ent);
        auto target = chemistry_problem(config.chemistry_dir / kH3File, target_layers, "H3", ent);
        if (!base || !target) {
            t.available = false;
            t.unavailable_reason = "chemistry Hamiltonians not found in " +
                                   config.chemistry_dir.string() + " (expected " + kH2File +
                                   " and " + kH3File + ")";
            t.base.description = "H2 STO-3G (missing)";
            t.target.description = "H3 STO-3G (missing)";
            t.base.layers = base_layers;
            t.target.layers = target_layers;
        } else {
            t.base = std::move(*base);
            t.target = std::move(*target);
        }
        break;
    }
    case 'D':
    case 'F': {
        const auto ansatz = id == 'D' ? AnsatzKind::HVA : AnsatzKind::HVAVariant;
        const std::size_t target_layers = config.target_layers.value_or(8);
        t.base = xxz_problem(Lattice::chain(4), ansatz, base_layers, chain, ent);
        t.target = xxz_problem(Lattice::chain(8), ansatz, target_layers, chain, ent);
        t.transfer = TransferMethod::Structure;
        t.string_length = 2;
        t.allowed_init_strings = {"TT", "TR", "RT", "RR"};
        t.supports_ble = id == 'F';
        break;
    }
    case 'E': {
        const std::size_t target_layers = config.target_layers.value_or(8);
        t.base = xxz_problem(Lattice::chain(4), AnsatzKind::HEA, base_layers, chain, ent);
        t.target =
            xxz_problem(Lattice::grid(2, 4), AnsatzKind::HEA, target_layers, config.grid_boundary, ent);
        t.transfer = TransferMethod::Structure;
        t.string_length = 4;
        t.allowed_init_strings = {"TTTT", "TRRT", "RTTR", "RRRR"};
        break;
    }
    default:
        fail(ErrorCode::InvalidArgument, "unknown task '" + std::string(1, id) + "'");
    }
    return t;
}

} // namespace

std::string to_string(TransferMethod method) {
    return method == TransferMethod::Network ? "network" : "structure";
}

CircuitSpec build_circuit(const ProblemSpec &problem) {
    switch (problem.ansatz) {
    case AnsatzKind::HEA:
        return build_hea(problem.num_qubits(), problem.layers, problem.entangler);
    case AnsatzKind::HVA:
        return build_hva(problem.parts, problem.layers);
    case AnsatzKind::HVAVariant:
        return build_hva_variant(problem.parts, problem.layers);
    case AnsatzKind::Tiled:
        break;
    }
    fail(ErrorCode::UnsupportedAnsatz, "problems cannot request a tiled ansatz directly");
}

CircuitSpec target_circuit(const TaskSpec &task) {
    require(task.available, ErrorCode::Config, "task " + std::string(1, task.id) +
                                                   " is unavailable: " + task.unavailable_reason);
    if (task.transfer == TransferMethod::Network) {
        const auto base = build_circuit(task.base);
        const std::size_t m = task.target.num_qubits();
        std::vector<std::size_t> offsets(m - base.num_qubits() + 1);
        std::iota(offsets.begin(), offsets.end(), std::size_t{0});
        return tile_circuit(base, m, offsets);
    }
    return build_circuit(task.target);
}

std::filesystem::path TaskConfig::default_chemistry_dir() {
    if (const char *env = std::getenv("QTRANSFER_CHEMISTRY_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::path(QTRANSFER_DEFAULT_DATA_DIR) / "chemistry";
}

TaskConfig TaskConfig::from_json(const nlohmann::json &j) {
    TaskConfig c;
    require(j.is_object(), ErrorCode::Config, "task config must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        require(key == "boundary" || key == "layers" || key == "hea_entangler" ||
                    key == "thresholds" || key == "target_successes" || key == "chemistry_dir",
                ErrorCode::Config, "unknown task config key '" + key + "'");
    }
    try {
        if (j.contains("boundary")) {
            const auto &b = j.at("boundary");
            if (b.is_string()) {
                c.chain_boundary = boundary_from_string(b.get<std::string>());
            } else {
                if (b.contains("chain")) {
                    c.chain_boundary = boundary_from_string(b.at("chain").get<std::string>());
                }
                if (b.contains("grid")) {
                    c.grid_boundary = boundary_from_string(b.at("grid").get<std::string>());
                }
            }
        }
        if (j.contains("layers")) {
            const auto &l = j.at("layers");
            if (l.contains("base")) {
                c.base_layers = l.at("base").get<std::size_t>();
            }
            if (l.contains("target")) {
                c.target_layers = l.at("target").get<std::size_t>();
            }
        }
        if (j.contains("hea_entangler")) {
            c.hea_entangler = entangler_from_string(j.at("hea_entangler").get<std::string>());
        }
        if (j.contains("thresholds")) {
            const auto &t = j.at("thresholds");
            c.success_threshold = t.is_number() ? t.get<double>() : t.at("success").get<double>();
        }
        if (j.contains("target_successes")) {
            c.target_successes = j.at("target_successes").get<std::size_t>();
        }
        if (j.contains("chemistry_dir")) {
            c.chemistry_dir = j.at("chemistry_dir").get<std::string>();
        }
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Config, std::string("task config: ") + e.what());
    }
    require(c.success_threshold > 0.0, ErrorCode::Config, "success threshold must be positive");
    require(c.target_successes >= 1, ErrorCode::Config, "target_successes must be at least 1");
    return c;
}

nlohmann::json TaskConfig::to_json() const {
    nlohmann::json j;
    j["boundary"] = {{"chain", to_string(chain_boundary)}, {"grid", to_string(grid_boundary)}};
    nlohmann::json layers = nlohmann::json::object();
    if (base_layers) {
        layers["base"] = *base_layers;
    }
    if (target_layers) {
        layers["target"] = *target_layers;
    }
    j["layers"] = layers;
    j["hea_entangler"] = to_string(hea_entangler);
    j["thresholds"] = {{"success", success_threshold}};
    j["target_successes"] = target_successes;
    j["chemistry_dir"] = chemistry_dir.string();
    return j;
}

std::vector<TaskSpec> task_registry(const TaskConfig &config) {
    std::vector<TaskSpec> out;
    for (char id : std::string("ABCDEF")) {
        out.push_back(make_task(id, config));
    }
    return out;
}

TaskSpec find_task(char id, const TaskConfig &config) {
    if (id >= 'a' && id <= 'f') {
        id = static_cast<char>(id - 'a' + 'A');
    }
    return make_task(id, config);
}

bool is_allowed_init(const TaskSpec &task, std::string_view init) {
    if (init == "BLE") {
        return task.supports_ble;
    }
    if (init.size() != task.string_length) {
        return false;
    }
    const std::string all_t(task.string_length, 'T');
    const std::string all_r(task.string_length, 'R');
    if (init == all_t || init == all_r) {
        return true;
    }
    for (const auto &s : task.allowed_init_strings) {
        if (s == init) {
            return true;
        }
    }
    return false;
}

HamiltonianText load_hamiltonian_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_hamiltonian(buf.str());
    } catch (const Error &e) {
        fail(e.code(), path.string() + ": " + e.message());
    }
}

void save_hamiltonian_file(const std::filesystem::path &path, const PauliSum &h,
                           std::optional<double> reference_energy) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
    out << format_hamiltonian(h, reference_energy);
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + path.string());
}

} // namespace qtransfer
