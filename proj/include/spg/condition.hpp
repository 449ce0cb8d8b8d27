#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

namespace spg {

// Conditioning input to a denoiser: a class label, the null condition
// (the classifier-free "empty prompt"), or an explicit embedding vector.
class Condition {
public:
    static Condition null() { return Condition(NullTag{}); }
    static Condition label(int id) { return Condition(id); }
    static Condition embedding(std::vector<double> values) { return Condition(std::move(values)); }

    bool is_null() const { return std::holds_alternative<NullTag>(value_); }
    bool is_label() const { return std::holds_alternative<int>(value_); }
    bool is_embedding() const { return std::holds_alternative<std::vector<double>>(value_); }

    int label_id() const {
        if (!is_label()) throw std::logic_error("Condition: not a class label");
        return std::get<int>(value_);
    }
    const std::vector<double>& embedding_values() const {
        if (!is_embedding()) throw std::logic_error("Condition: not an embedding");
        return std::get<std::vector<double>>(value_);
    }

    bool operator==(const Condition&) const = default;

private:
    struct NullTag {
        bool operator==(const NullTag&) const = default;
    };
    template <typename T>
    explicit Condition(T&& v) : value_(std::forward<T>(v)) {}

    std::variant<NullTag, int, std::vector<double>> value_;
};

}  // namespace spg
