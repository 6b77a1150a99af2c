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
#include "qtransfer/init.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "qtransfer/error.hpp"

namespace qtransfer {

namespace {

bool is_hva_family(AnsatzKind k) { return k == AnsatzKind::HVA || k == AnsatzKind::HVAVariant; }

std::string json_string(const std::string &s) { return nlohmann::json(s).dump(); }

} // namespace

std::vector<double> random_params(std::size_t count, Rng &rng) {
    require(count >= 1, ErrorCode::InvalidArgument, "random_params needs at least one parameter");
    std::vector<double> out(count);
    for (auto &v : out) {
        v = uniform_angle(rng);
    }
    return out;
}

TransferString TransferString::parse(std::string_view text) {
    require(!text.empty(), ErrorCode::InvalidArgument, "transfer string is empty");
    TransferString s;
    for (char c : text) {
        require(c == 'T' || c == 'R', ErrorCode::InvalidArgument,
                "transfer string '" + std::string(text) + "' may only contain T and R");
        s.transferred_.push_back(c == 'T');
    }
    return s;
}

TransferString TransferString::uniform(std::size_t length, bool transferred) {
    return parse(std::string(length, transferred ? 'T' : 'R'));
}

bool TransferString::any_transferred() const noexcept {
    return std::any_of(transferred_.begin(), transferred_.end(), [](bool t) { return t; });
}

std::string TransferString::str() const {
    std::string out;
    for (bool t : transferred_) {
        out += t ? 'T' : 'R';
    }
    return out;
}

NetworkTransfer network_transfer(const CircuitSpec &base, std::span<const double> trained,
                                 std::size_t target_qubits, const TransferString &s, Rng &rng) {
    require(base.kind() == AnsatzKind::HEA, ErrorCode::UnsupportedAnsatz,
            "network transfer only tiles problem-agnostic (HEA) circuits, got " +
                to_string(base.kind()));
    require(trained.size() == base.num_params(), ErrorCode::ShapeMismatch,
            "trained parameters do not match the base circuit");
    const std::size_t n = base.num_qubits();
    require(target_qubits >= n, ErrorCode::InvalidArgument,
            "network transfer target must have at least as many qubits as the base");
    const std::size_t copies = target_qubits - n + 1;
    require(s.size() == copies, ErrorCode::InvalidArgument,
            "transfer string '" + s.str() + "' must have length " + std::to_string(copies));

    std::vector<std::size_t> offsets(copies);
    std::iota(offsets.begin(), offsets.end(), std::size_t{0});
    NetworkTransfer out{tile_circuit(base, target_qubits, offsets), {}};
    out.params.reserve(out.circuit.num_params());
    for (std::size_t i = 0; i < copies; ++i) {
        if (s.transferred(i)) {
            out.params.insert(out.params.end(), trained.begin(), trained.end());
        } else {
            const auto fresh = random_params(base.num_params(), rng);
            out.params.insert(out.params.end(), fresh.begin(), fresh.end());
        }
    }
    return out;
}

std::vector<double> structure_transfer(const CircuitSpec &base, std::span<const double> trained,
                                       const CircuitSpec &target, const TransferString &s, Rng &rng) {
    require(trained.size() == base.num_params(), ErrorCode::ShapeMismatch,
            "trained parameters do not match the base circuit");
    const bool hea = base.kind() == AnsatzKind::HEA && target.kind() == AnsatzKind::HEA;
    const bool hva = is_hva_family(base.kind()) && base.kind() == target.kind();
    require(hea || hva, ErrorCode::UnsupportedAnsatz,
            "structure transfer needs matching ansatz families, got " + to_string(base.kind()) +
                " -> " + to_string(target.kind()));
    require(target.layers() % s.size() == 0, ErrorCode::InvalidArgument,
            std::to_string(target.layers()) + " target layers cannot be split into " +
                std::to_string(s.size()) + " equal blocks");
    if (hea) {
        require(base.num_qubits() <= target.num_qubits(), ErrorCode::InvalidArgument,
                "HEA base has more qubits than the target");
    } else {
        require(base.params_per_layer() == target.params_per_layer(), ErrorCode::ShapeMismatch,
                "HVA base and target split the Hamiltonian into different part counts");
    }

    const std::size_t depth = target.layers() / s.size();
    std::vector<double> out(target.num_params());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const auto &slot = target.layout()[idx];
        const bool copy = s.transferred(slot.layer / depth) &&
                          (hva || slot.position / 3 < base.num_qubits());
        if (copy) {
            const std::size_t base_layer = slot.layer % base.layers();
            out[idx] = trained[base.index_of({0, base_layer, slot.position})];
        } else {
            out[idx] = uniform_angle(rng);
        }
    }
    return out;
}

std::vector<double> ble_init(const CircuitSpec &variant, Rng &rng) {
    require(variant.kind() == AnsatzKind::HVAVariant, ErrorCode::UnsupportedAnsatz,
            "block-identity initialization needs the mirrored HVA variant, got " +
                to_string(variant.kind()));
    const std::size_t m = variant.params_per_layer();
    std::vector<double> out(variant.num_params());
    for (std::size_t p = 0; p + 1 < variant.layers(); p += 2) {
        for (std::size_t k = 0; k < m; ++k) {
            const double theta = uniform_angle(rng);
            out[p * m + k] = theta;
            out[(p + 1) * m + k] = -theta;
        }
    }
    return out;
}

std::string pool_to_json(const ParamPool &pool) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "{\n";
    out << "  \"format_version\": " << kPoolFormatVersion << ",\n";
    out << "  \"task\": " << json_string(pool.task) << ",\n";
    out << "  \"ansatz\": " << json_string(pool.ansatz) << ",\n";
    if (!pool.entangler.empty()) {
        out << "  \"entangler\": " << json_string(pool.entangler) << ",\n";
    }
    out << "  \"n\": " << pool.num_qubits << ",\n";
    out << "  \"layers\": " << pool.layers << ",\n";
    out << "  \"num_params\": " << pool.num_params << ",\n";
    out << "  \"manifest\": " << pool.manifest.dump() << ",\n";
    out << "  \"entries\": [";
    for (std::size_t i = 0; i < pool.entries.size(); ++i) {
        const auto &e = pool.entries[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"seed\": " << e.seed << ", \"energy\": " << format_double(e.energy)
            << ", \"params\": [";
        for (std::size_t k = 0; k < e.params.size(); ++k) {
            out << (k == 0 ? "" : ", ") << format_double(e.params[k]);
        }
        out << "]}";
    }
    out << (pool.entries.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

ParamPool pool_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("pool file: ") + e.what());
    }
    ParamPool pool;
    try {
        const int version = j.at("format_version").get<int>();
        require(version == kPoolFormatVersion, ErrorCode::Config,
                "pool format version " + std::to_string(version) + " is not supported (expected " +
                    std::to_string(kPoolFormatVersion) + ")");
        pool.task = j.at("task").get<std::string>();
        pool.ansatz = j.at("ansatz").get<std::string>();
        pool.entangler = j.value("entangler", std::string());
        pool.num_qubits = j.at("n").get<std::size_t>();
        pool.layers = j.at("layers").get<std::size_t>();
        pool.num_params = j.at("num_params").get<std::size_t>();
        if (j.contains("manifest")) {
            pool.manifest = j.at("manifest");
        }
        for (const auto &e : j.at("entries")) {
            PoolEntry entry;
            entry.seed = e.at("seed").get<std::uint64_t>();
            entry.energy = e.at("energy").get<double>();
            entry.params = e.at("params").get<std::vector<double>>();
            require(entry.params.size() == pool.num_params, ErrorCode::ShapeMismatch,
                    "pool entry has " + std::to_string(entry.params.size()) +
                        " parameters, header says " + std::to_string(pool.num_params));
            pool.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("pool file: ") + e.what());
    }
    return pool;
}

void pool_save(const ParamPool &pool, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
    out << pool_to_json(pool);
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + path.string());
}

ParamPool pool_load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return pool_from_json(buf.str());
    } catch (const Error &e) {
        fail(e.code(), path.string() + ": " + e.message());
    }
}

void check_pool_shape(const ParamPool &pool, const CircuitSpec &base) {
    const std::string entangler =
        base.kind() == AnsatzKind::HEA ? to_string(base.entangler()) : std::string();
    require(pool.ansatz == to_string(base.kind()) && pool.entangler == entangler &&
                pool.num_qubits == base.num_qubits() &&
                pool.layers == base.layers() && pool.num_params == base.num_params(),
            ErrorCode::ShapeMismatch,
            "pool was trained on " + pool.ansatz +
                (pool.entangler.empty() ? "" : "/" + pool.entangler) + " n=" + std::to_string(pool.num_qubits) +
                " layers=" + std::to_string(pool.layers) + ", base circuit is " +
                to_string(base.kind()) + " n=" + std::to_string(base.num_qubits()) +
                " layers=" + std::to_string(base.layers()));
}

const PoolEntry &pool_draw(const ParamPool &pool, Rng &rng) {
    require(!pool.entries.empty(), ErrorCode::EmptyPool, "cannot draw from an empty pool");
    return pool.entries[uniform_index(pool.entries.size(), rng)];
}

} // namespace qtransfer
