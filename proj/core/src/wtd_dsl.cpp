#include "nmk/wtd_dsl.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nmk/format.hpp"

namespace nmk {

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    WaitingTimeSpec parse() {
        WaitingTimeSpec spec = parse_wtd();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return spec;
    }

  private:
    [[noreturn]] void fail(const std::string& what) {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << what << " at col " << col;
        throw WtdParseError(msg.str(), line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view take_ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected 'exp', 'erlang', 'conv' or 'mix'");
        return text_.substr(start, pos_ - start);
    }

    double take_number() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '+' || text_[pos_] == '-') &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        double value = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || pos_ == start) {
            pos_ = start;
            fail("expected a number");
        }
        return value;
    }

    int take_int() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        int value = 0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || pos_ == start) {
            pos_ = start;
            fail("expected an integer");
        }
        return value;
    }

    WaitingTimeSpec parse_wtd() {
        const std::string_view head = take_ident();
        if (head == "exp") {
            expect('(');
            double rate = take_number();
            expect(')');
            return WaitingTimeSpec::exponential(rate);
        }
        if (head == "erlang") {
            expect('(');
            int shape = take_int();
            expect(',');
            double rate = take_number();
            expect(')');
            return WaitingTimeSpec::erlang(shape, rate);
        }
        if (head == "conv") {
            expect('(');
            std::vector<WaitingTimeSpec> children;
            children.push_back(parse_wtd());
            while (peek_is(',')) {
                ++pos_;
                children.push_back(parse_wtd());
            }
            expect(')');
            return WaitingTimeSpec::convolution(std::move(children));
        }
        if (head == "mix") {
            expect('(');
            std::vector<double> weights;
            std::vector<WaitingTimeSpec> children;
            auto branch = [&] {
                weights.push_back(take_number());
                expect(':');
                children.push_back(parse_wtd());
            };
            branch();
            while (peek_is(',')) {
                ++pos_;
                branch();
            }
            expect(')');
            return WaitingTimeSpec::mixture(std::move(weights), std::move(children));
        }
        pos_ -= head.size();
        fail("unknown node '" + std::string(head) + "'");
    }

    std::string_view text_;
    size_t pos_ = 0;
};

void print_rec(const WaitingTimeSpec& spec, std::string& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExponentialWtd>) {
                out += "exp(" + to_string_g17(node.rate) + ")";
            } else if constexpr (std::is_same_v<T, ErlangWtd>) {
                out += "erlang(" + std::to_string(node.shape) + "," + to_string_g17(node.rate) + ")";
            } else if constexpr (std::is_same_v<T, ConvolutionWtd>) {
                out += "conv(";
                for (size_t i = 0; i < node.children.size(); ++i) {
                    if (i) out += ",";
                    print_rec(node.children[i], out);
                }
                out += ")";
            } else {
                out += "mix(";
                for (size_t i = 0; i < node.children.size(); ++i) {
                    if (i) out += ",";
                    out += to_string_g17(node.weights[i]) + ":";
                    print_rec(node.children[i], out);
                }
                out += ")";
            }
        },
        spec.node);
}

using nlohmann::json;

json to_json_rec(const WaitingTimeSpec& spec) {
    return std::visit(
        [&](const auto& node) -> json {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExponentialWtd>) {
                return json{{"type", "exp"}, {"rate", node.rate}};
            } else if constexpr (std::is_same_v<T, ErlangWtd>) {
                return json{{"type", "erlang"}, {"shape", node.shape}, {"rate", node.rate}};
            } else if constexpr (std::is_same_v<T, ConvolutionWtd>) {
                json children = json::array();
                for (const auto& child : node.children) children.push_back(to_json_rec(child));
                return json{{"type", "conv"}, {"children", std::move(children)}};
            } else {
                json branches = json::array();
                for (size_t i = 0; i < node.children.size(); ++i)
                    branches.push_back(
                        json{{"weight", node.weights[i]}, {"child", to_json_rec(node.children[i])}});
                return json{{"type", "mix"}, {"branches", std::move(branches)}};
            }
        },
        spec.node);
}

WaitingTimeSpec from_json_rec(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "exp") return WaitingTimeSpec::exponential(j.at("rate").get<double>());
    if (type == "erlang")
        return WaitingTimeSpec::erlang(j.at("shape").get<int>(), j.at("rate").get<double>());
    if (type == "conv") {
        std::vector<WaitingTimeSpec> children;
        for (const auto& c : j.at("children")) children.push_back(from_json_rec(c));
        return WaitingTimeSpec::convolution(std::move(children));
    }
    if (type == "mix") {
        std::vector<double> weights;
        std::vector<WaitingTimeSpec> children;
        for (const auto& b : j.at("branches")) {
            weights.push_back(b.at("weight").get<double>());
            children.push_back(from_json_rec(b.at("child")));
        }
        return WaitingTimeSpec::mixture(std::move(weights), std::move(children));
    }
    throw std::invalid_argument("unknown waiting-time node type '" + type + "'");
}

}  // namespace

WaitingTimeSpec parse_wtd(std::string_view input) { return Parser(input).parse(); }

std::string print_wtd(const WaitingTimeSpec& spec) {
    std::string out;
    print_rec(spec, out);
    return out;
}

WaitingTimeSpec wtd_from_json(const std::string& json_text) {
    return from_json_rec(json::parse(json_text));
}

std::string wtd_to_json(const WaitingTimeSpec& spec) { return to_json_rec(spec).dump(); }

}  // namespace nmk
