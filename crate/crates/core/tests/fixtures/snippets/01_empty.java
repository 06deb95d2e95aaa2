class Snippet {
    void m() {
    }
}
