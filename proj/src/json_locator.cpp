#include "wmink/json_locator.hpp"

#include <algorithm>
#include <cctype>

namespace wmink::io {

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, std::map<std::string, int>& out) : text_(text), out_(out) {}

  void run() {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string() {
    std::string s;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        s += text_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      s += text_[pos_++];
    }
    ++pos_;
    return s;
  }

  static std::string escape(const std::string& key) {
    std::string e;
    for (char c : key) {
      if (c == '~')
        e += "~0";
      else if (c == '/')
        e += "~1";
      else
        e += c;
    }
    return e;
  }

  void value(const std::string& path) {
    out_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == '}') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const std::string key = string();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ':') ++pos_;
        skip_ws();
        value(path + "/" + escape(key));
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      int index = 0;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ']') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        value(path + "/" + std::to_string(index++));
      }
      ++pos_;
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ',' &&
             text_[pos_] != '}' && text_[pos_] != ']')
        ++pos_;
    }
  }

  std::string_view text_;
  std::map<std::string, int>& out_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

JsonLocator::JsonLocator(std::string_view text) { Scanner(text, lines_).run(); }

int JsonLocator::line_of(const std::string& pointer) const {
  const auto it = lines_.find(pointer);
  return it == lines_.end() ? 0 : it->second;
}

int line_at(std::string_view text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

}  // namespace wmink::io
