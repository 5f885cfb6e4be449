#include "cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ptnorm/errors.hpp"

namespace ptnorm::cli {

using nlohmann::json;

nlohmann::json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["model"] = c.model;
    auto put_opt = [&j](const char* key, const std::optional<double>& v) {
        if (v) {
            j[key] = *v;
        } else {
            j[key] = nullptr;
        }
    };
    put_opt("alpha", c.alpha);
    put_opt("c", c.c);
    put_opt("A", c.A);
    put_opt("B", c.B);
    put_opt("gamma", c.gamma);
    j["q"] = c.q;
    j["n"] = c.n;
    j["labels"] = c.labels;
    j["superpose"] = c.superpose;
    j["tol"] = c.tol;
    j["grid_half_width"] = c.grid_half_width;
    j["points"] = c.points;
    j["dt"] = c.dt;
    j["steps"] = c.steps;
    j["snapshot_every"] = c.snapshot_every;
    j["jobs"] = c.jobs;
    j["c2"] = c.c2;
    j["numeric_only"] = c.numeric_only;
    j["out"] = c.out;
    j["format"] = c.format;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.model = j.at("model").get<std::string>();
    auto get_opt = [&j](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    c.alpha = get_opt("alpha");
    c.c = get_opt("c");
    c.A = get_opt("A");
    c.B = get_opt("B");
    c.gamma = get_opt("gamma");
    c.q = j.at("q").get<int>();
    c.n = j.at("n").get<int>();
    c.labels = j.at("labels").get<std::string>();
    c.superpose = j.at("superpose").get<std::string>();
    c.tol = j.at("tol").get<double>();
    c.grid_half_width = j.at("grid_half_width").get<double>();
    c.points = j.at("points").get<int>();
    c.dt = j.at("dt").get<double>();
    c.steps = j.at("steps").get<int>();
    c.snapshot_every = j.at("snapshot_every").get<int>();
    c.jobs = j.at("jobs").get<int>();
    c.c2 = j.at("c2").get<double>();
    c.numeric_only = j.at("numeric_only").get<bool>();
    c.out = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
}

ModelSpec build_model(const RunConfig& config) {
    auto require = [](const std::optional<double>& v,
                      const char* flag) -> double {
        if (!v) {
            throw ValidationError(std::string("missing required parameter ") +
                                  flag + " for this model family");
        }
        return *v;
    };
    if (config.model == "oscillator") {
        return OscillatorParams(require(config.alpha, "--alpha"),
                                require(config.c, "--c"));
    }
    if (config.model == "gpt") {
        return GptParams(require(config.A, "--A"), require(config.B, "--B"),
                         require(config.gamma, "--gamma"));
    }
    if (config.model == "scarf") {
        return ScarfParams(require(config.A, "--A"), require(config.B, "--B"));
    }
    throw ValidationError("unknown model family '" + config.model +
                          "' (expected oscillator, gpt or scarf)");
}

namespace {

int parse_int(const std::string& text, const char* what) {
    int value = 0;
    std::string trimmed = text;
    if (!trimmed.empty() && trimmed.front() == '+') trimmed.erase(0, 1);
    const auto* begin = trimmed.data();
    const auto* end = begin + trimmed.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(std::string("cannot parse ") + what + " from '" +
                              text + "'");
    }
    return value;
}

StateLabel parse_label_token(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("label '" + token + "' is not of the form q:n");
    }
    StateLabel label{};
    label.q = parse_int(token.substr(0, colon), "quasi-parity");
    label.n = parse_int(token.substr(colon + 1), "quantum number");
    return label;
}

// coefficient grammar: "a", "bi", "a+bi", "a-bi" (also accepts j for i)
std::complex<double> parse_coefficient(const std::string& text) {
    if (text.empty()) {
        throw ValidationError("empty superposition coefficient");
    }
    std::string s = text;
    bool imaginary_only = false;
    if (s.back() == 'i' || s.back() == 'j') {
        s.pop_back();
        imaginary_only = true;
    }
    // look for an interior +/- splitting re and im
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
        }
    }
    try {
        if (split == std::string::npos) {
            const double v = std::stod(s);
            return imaginary_only ? std::complex<double>(0.0, v)
                                  : std::complex<double>(v, 0.0);
        }
        if (!imaginary_only) {
            throw ValidationError("coefficient '" + text +
                                  "' has two parts but no trailing i");
        }
        const double re = std::stod(s.substr(0, split));
        std::string im_text = s.substr(split);
        if (im_text == "+" || im_text == "-") im_text += "1";
        return {re, std::stod(im_text)};
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse coefficient '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

std::vector<StateLabel> parse_labels(const std::string& text) {
    std::vector<StateLabel> labels;
    for (const std::string& token : split(text, ',')) {
        labels.push_back(parse_label_token(token));
    }
    return labels;
}

std::vector<std::pair<std::complex<double>, StateLabel>> parse_superposition(
    const std::string& text) {
    std::vector<std::pair<std::complex<double>, StateLabel>> terms;
    for (const std::string& token : split(text, ';')) {
        const auto at = token.find('@');
        if (at == std::string::npos) {
            throw ValidationError("superposition term '" + token +
                                  "' is not of the form coef@q:n");
        }
        terms.emplace_back(parse_coefficient(token.substr(0, at)),
                           parse_label_token(token.substr(at + 1)));
    }
    if (terms.empty()) {
        throw ValidationError("superposition list is empty");
    }
    return terms;
}

}  // namespace ptnorm::cli
