// Copyright 2026 The spin-povm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spin_povm/io.hpp"

#include <fstream>
#include <sstream>

namespace spin_povm {

namespace {

[[noreturn]] void malformed(const std::string &what) {
    throw SpinPovmError("malformed_input", what);
}

const json &field(const json &doc, const char *key) {
    if (!doc.is_object() || !doc.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

ComplexVector amplitudes_from(const json &doc) {
    const json &re = field(doc, "re");
    const json &im = field(doc, "im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
        malformed("'re' and 'im' must be arrays of equal length");
    }
    ComplexVector amps(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (!re[i].is_number() || !im[i].is_number()) {
            malformed("amplitude entries must be numbers");
        }
        amps(static_cast<Eigen::Index>(i)) =
            complex_t(re[i].get<double>(), im[i].get<double>());
    }
    return amps;
}

void amplitudes_to(json &doc, const ComplexVector &amps) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        re.push_back(amps(i).real());
        im.push_back(amps(i).imag());
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
}

json optional_number(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

Spin spin_from_json(const json &value) {
    if (value.is_string()) {
        try {
            return Spin::parse(value.get<std::string>());
        } catch (const SpinPovmError &e) {
            malformed(e.what());
        }
    }
    if (value.is_number()) {
        std::ostringstream text;
        text << value.get<double>();
        try {
            return Spin::parse(text.str());
        } catch (const SpinPovmError &e) {
            malformed(e.what());
        }
    }
    malformed("'J' must be a string or a number");
}

Spinor spinor_from_json(const json &doc) {
    const Spin spin = spin_from_json(field(doc, "J"));
    ComplexVector amps = amplitudes_from(doc);
    if (amps.size() != spin.dim()) {
        malformed("state needs " + std::to_string(spin.dim()) + " amplitudes for J = " +
                  spin.to_string());
    }
    return Spinor{spin, std::move(amps)};
}

json spinor_to_json(const Spinor &psi) {
    json doc;
    doc["J"] = psi.spin.to_string();
    amplitudes_to(doc, psi.amplitudes);
    return doc;
}

Povm povm_from_json(const json &doc) {
    const Spin spin = spin_from_json(field(doc, "J"));
    const json &copies = field(doc, "N");
    if (!copies.is_number_integer()) {
        malformed("'N' must be an integer");
    }
    const json &elems = field(doc, "elements");
    if (!elems.is_array()) {
        malformed("'elements' must be an array");
    }
    std::vector<PovmElement> elements;
    for (const auto &e : elems) {
        const json &weight = field(e, "weight");
        if (!weight.is_number()) {
            malformed("'weight' must be a number");
        }
        ComplexVector amps = amplitudes_from(e);
        if (amps.size() != spin.dim()) {
            malformed("element needs " + std::to_string(spin.dim()) + " amplitudes");
        }
        elements.push_back({weight.get<double>(), Spinor{spin, std::move(amps)}});
    }
    return Povm(spin, copies.get<int>(), std::move(elements));
}

json povm_to_json(const Povm &povm) {
    json doc;
    doc["J"] = povm.spin().to_string();
    doc["N"] = povm.copies();
    json elems = json::array();
    for (const auto &e : povm.elements()) {
        json item;
        item["weight"] = e.weight;
        amplitudes_to(item, e.state.amplitudes);
        elems.push_back(std::move(item));
    }
    doc["elements"] = std::move(elems);
    return doc;
}

std::string dump_canonical(const json &doc) {
    return doc.dump(2) + "\n";
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw SpinPovmError("io_error", "cannot open '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str());
}

json parse_json_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

json to_json(const MomentReport &report) {
    json doc;
    doc["order0_residual"] = report.order0_residual;
    doc["order1_residual"] = optional_number(report.order1_residual);
    doc["order2_residual"] = optional_number(report.order2_residual);
    doc["order3_residual"] = optional_number(report.order3_residual);
    doc["completeness_residual"] = optional_number(report.completeness_residual);
    doc["basiceq_residual"] = optional_number(report.basiceq_residual);
    doc["worst"] = report.worst();
    return doc;
}

json to_json(const FidelityEstimate &estimate) {
    json doc;
    doc["mean"] = estimate.mean;
    doc["stderr"] = estimate.stderr_of_mean;
    doc["analytic"] = estimate.analytic;
    doc["samples"] = estimate.samples;
    return doc;
}

json to_json(const BoundReport &report) {
    json doc;
    doc["N"] = report.copies;
    doc["J"] = report.spin.to_string();
    doc["n_lower_bound"] = report.n_lower_bound;
    doc["weight_upper_bound"] = optional_number(report.weight_upper_bound);
    switch (report.saturable) {
    case Saturability::yes:
        doc["saturable"] = true;
        break;
    case Saturability::no_by_parity:
        doc["saturable"] = false;
        break;
    case Saturability::unknown:
        doc["saturable"] = nullptr;
        break;
    }
    doc["saturable_status"] = to_string(report.saturable);
    if (report.parity) {
        doc["parity_p"] = report.parity->p.to_string();
        doc["parity_q"] = report.parity->q.to_string();
        doc["saturable_by_parity"] = report.parity->saturable;
    }
    doc["note"] = report.note;
    return doc;
}

} // namespace spin_povm
