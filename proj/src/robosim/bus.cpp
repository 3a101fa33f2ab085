#include "blocksight/robosim/bus.hpp"

#include <sstream>

namespace blocksight::robosim {

void Scheduler::schedule(SimNs time, std::function<void()> fn) {
    if (time < now_) time = now_;
    queue_.push({time, next_seq_++, std::move(fn)});
}

void Scheduler::run_next() {
    Event e = queue_.top();
    queue_.pop();
    now_ = e.time;
    e.fn();
}

void Bus::declare_topic(const std::string& topic, const std::string& type_tag) {
    topics_[topic].type_tag = type_tag;
}

void Bus::add_publisher(const std::string& node, const std::string& topic) {
    if (!topics_.count(topic)) throw ConfigError("unknown topic: " + topic);
    topics_[topic].publishers.push_back(node);
    bindings_[{node, topic}] = topic;
}

void Bus::subscribe(const std::string& node, const std::string& topic,
                    std::function<void(const BusMessage&)> callback) {
    if (!topics_.count(topic)) throw ConfigError("unknown topic: " + topic);
    topics_[topic].subscribers.emplace_back(node, std::move(callback));
}

void Bus::deliver(const std::string& topic, SimNs publish_ns, SimNs deliver_ns,
                  std::vector<std::int64_t> payload) {
    scheduler_->schedule(deliver_ns, [this, topic, publish_ns, deliver_ns,
                                      payload = std::move(payload)]() {
        BusMessage msg{topic, publish_ns, deliver_ns, payload};
        for (auto& [node, callback] : topics_[topic].subscribers) callback(msg);
    });
}

void Bus::publish(const std::string& node, const std::string& topic,
                  std::vector<std::int64_t> payload) {
    auto it = bindings_.find({node, topic});
    const std::string& actual = it != bindings_.end() ? it->second : topic;
    if (!topics_.count(actual)) throw ConfigError("publish on unknown topic: " + actual);
    const SimNs now = scheduler_->now();
    deliver(actual, now, now, std::move(payload));
}

void Bus::intercept(const std::string& topic, SimNs delay_ns) {
    auto it = topics_.find(topic);
    if (it == topics_.end()) throw ConfigError("cannot intercept unknown topic: " + topic);

    const std::string rerouted = topic + "_intercepted";
    declare_topic(rerouted, it->second.type_tag);

    // Rebind every original publisher to the renamed topic.
    auto& original = topics_[topic];
    auto& side = topics_[rerouted];
    for (const auto& node : original.publishers) {
        side.publishers.push_back(node);
        bindings_[{node, topic}] = rerouted;
    }
    original.publishers.clear();

    const std::string delay_node = "delay:" + topic;
    topics_[topic].publishers.push_back(delay_node);
    bindings_[{delay_node, topic}] = topic;
    subscribe(delay_node, rerouted, [this, topic, delay_ns](const BusMessage& msg) {
        deliver(topic, msg.publish_ns, msg.deliver_ns + delay_ns, msg.payload);
    });
}

std::string Bus::topology() const {
    std::ostringstream os;
    for (const auto& [name, info] : topics_) {
        for (const auto& pub : info.publishers) {
            os << pub << " -> " << name << " -> [";
            for (std::size_t i = 0; i < info.subscribers.size(); ++i) {
                if (i) os << " ";
                os << info.subscribers[i].first;
            }
            os << "]\n";
        }
    }
    return os.str();
}

}  // namespace blocksight::robosim
