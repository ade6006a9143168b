#include "adlab/transcript.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "adlab/json_io.hpp"
#include "adlab/norms.hpp"

namespace adlab {

void Transcript::validate() const {
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const auto& r = rounds[i];
        if (r.t != static_cast<std::int64_t>(i) + 1) {
            throw std::invalid_argument("Transcript: rounds must be 1,2,... with no gaps");
        }
        if (static_cast<int>(r.answer.size()) != r.query.dim) {
            throw std::invalid_argument("Transcript: answer dim != query dim");
        }
    }
}

void Transcript::write_csv(std::ostream& os) const {
    const std::size_t d_q = rounds.empty() ? 0 : rounds.front().answer.size();
    os << "t,query_id";
    for (std::size_t j = 0; j < d_q; ++j) os << ",answer_" << j;
    for (std::size_t j = 0; j < d_q; ++j) os << ",empirical_" << j;
    for (std::size_t j = 0; j < d_q; ++j) os << ",true_mean_" << j;
    os << "\n";
    os.precision(17);
    for (const auto& r : rounds) {
        os << r.t << "," << r.query.id;
        for (double v : r.answer) os << "," << v;
        for (double v : r.empirical) os << "," << v;
        for (double v : r.true_mean) os << "," << v;
        os << "\n";
    }
}

std::string Transcript::to_json() const {
    nlohmann::json j;
    j["version"] = kVersion;
    j["mechanism"] = mechanism_desc;
    j["analyst"] = analyst_desc;
    auto& arr = j["rounds"] = nlohmann::json::array();
    for (const auto& r : rounds) {
        nlohmann::json jr;
        jr["t"] = r.t;
        jr["query"] = query_to_json(r.query);
        jr["answer"] = r.answer;
        jr["empirical"] = r.empirical;
        jr["true_mean"] = r.true_mean;
        if (!r.noise.empty()) jr["noise"] = r.noise;
        if (!r.noise_a.empty()) jr["noise_a"] = r.noise_a;
        if (!r.noise_b.empty()) jr["noise_b"] = r.noise_b;
        arr.push_back(std::move(jr));
    }
    return j.dump();
}

Transcript Transcript::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != kVersion) {
        throw std::invalid_argument("Transcript: unsupported version");
    }
    Transcript out;
    out.mechanism_desc = j.at("mechanism").get<std::string>();
    out.analyst_desc = j.at("analyst").get<std::string>();
    for (const auto& jr : j.at("rounds")) {
        Round r;
        r.t = jr.at("t").get<std::int64_t>();
        r.query = query_from_json(jr.at("query"));
        r.answer = jr.at("answer").get<std::vector<double>>();
        r.empirical = jr.at("empirical").get<std::vector<double>>();
        r.true_mean = jr.at("true_mean").get<std::vector<double>>();
        if (jr.contains("noise")) r.noise = jr.at("noise").get<std::vector<double>>();
        if (jr.contains("noise_a")) r.noise_a = jr.at("noise_a").get<std::vector<double>>();
        if (jr.contains("noise_b")) r.noise_b = jr.at("noise_b").get<std::vector<double>>();
        out.rounds.push_back(std::move(r));
    }
    out.validate();
    return out;
}

double generalization_error(const Transcript& transcript) {
    if (transcript.rounds.empty()) {
        throw std::invalid_argument("generalization_error: empty transcript");
    }
    double worst = 0.0;
    for (const auto& r : transcript.rounds) {
        worst = std::max(worst, linf_distance(r.answer, r.true_mean));
    }
    return worst;
}

}  // namespace adlab
