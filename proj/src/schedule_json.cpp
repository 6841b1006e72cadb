#include "fractaldim/schedule_json.hpp"

namespace fractaldim {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json schedule_to_json(const DigitSchedule& sched) {
    ordered_json j;
    j["base"] = sched.base();
    switch (sched.kind()) {
        case DigitSchedule::Kind::Constant: {
            j["kind"] = "constant";
            j["f"] = sched.constant_f();
            // canonical digit sets {0..f-1} stay implicit
            const auto& digits = sched.constant_digit_set();
            bool canonical = true;
            for (std::size_t i = 0; i < digits.size(); ++i)
                if (digits[i] != static_cast<int>(i)) canonical = false;
            if (!canonical) j["allowed_digits"] = digits;
            break;
        }
        case DigitSchedule::Kind::Blocks: {
            j["kind"] = "blocks";
            j["block_len"] = sched.block_len();
            if (!sched.block_strings().empty())
                j["allowed_strings"] = sched.block_strings();
            else
                j["r"] = sched.block_free();
            break;
        }
        case DigitSchedule::Kind::Partition: {
            j["kind"] = "partition";
            const auto& part = sched.partition_schedule();
            if (part->is_ngrowth()) {
                j["generator"] = "ngrowth";
                j["seed_a"] = part->seed_a();
                j["seed_b"] = part->seed_b();
            } else {
                j["generator"] = "explicit";
                std::vector<std::string> lens;
                for (const BigInt& l : part->explicit_list()) lens.push_back(l.str());
                j["lengths"] = lens;
            }
            j["role"] = role_name(sched.partition_role());
            break;
        }
        case DigitSchedule::Kind::ExplicitPrefix:
            j["kind"] = "explicit";
            j["prefix"] = sched.prefix_freedoms();
            j["tail_f"] = sched.tail_freedom();
            break;
        case DigitSchedule::Kind::Product:
            j["kind"] = "product";
            j["a"] = schedule_to_json(sched.factor(0));
            j["b"] = schedule_to_json(sched.factor(1));
            break;
    }
    return j;
}

DigitSchedule schedule_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("schedule JSON: expected an object");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "product") {
        return DigitSchedule::product(schedule_from_json(j.at("a")), schedule_from_json(j.at("b")));
    }

    const int base = j.at("base").get<int>();
    if (kind == "constant") {
        if (j.contains("allowed_digits"))
            return DigitSchedule::constant_digits(base, j.at("allowed_digits").get<std::vector<int>>());
        return DigitSchedule::constant(base, j.at("f").get<int>());
    }
    if (kind == "blocks") {
        const int block_len = j.at("block_len").get<int>();
        if (j.contains("allowed_strings"))
            return DigitSchedule::blocks_explicit(base, block_len,
                                                  j.at("allowed_strings").get<std::vector<std::string>>());
        return DigitSchedule::blocks(base, block_len, j.at("r").get<int>());
    }
    if (kind == "partition") {
        const std::string gen = j.at("generator").get<std::string>();
        const std::string role_str = j.at("role").get<std::string>();
        if (role_str != "A" && role_str != "B")
            throw std::invalid_argument("schedule JSON: role must be \"A\" or \"B\"");
        const PartitionRole role = role_str == "A" ? PartitionRole::A : PartitionRole::B;
        std::shared_ptr<PartitionSchedule> part;
        if (gen == "ngrowth") {
            part = PartitionSchedule::ngrowth(j.at("seed_a").get<std::uint64_t>(),
                                              j.at("seed_b").get<std::uint64_t>());
        } else if (gen == "explicit") {
            std::vector<BigInt> lens;
            for (const auto& item : j.at("lengths")) {
                if (item.is_string()) lens.emplace_back(item.get<std::string>());
                else lens.emplace_back(item.get<long long>());
            }
            part = PartitionSchedule::explicit_lengths(std::move(lens));
        } else {
            throw std::invalid_argument("schedule JSON: unknown generator '" + gen + "'");
        }
        return DigitSchedule::partition(base, std::move(part), role);
    }
    if (kind == "explicit") {
        return DigitSchedule::explicit_prefix(base, j.at("prefix").get<std::vector<int>>(),
                                              j.at("tail_f").get<int>());
    }
    throw std::invalid_argument("schedule JSON: unknown kind '" + kind + "'");
}

std::string schedule_hash(const DigitSchedule& sched) {
    return hex64(fnv1a64(schedule_to_json(sched).dump()));
}

} // namespace fractaldim
