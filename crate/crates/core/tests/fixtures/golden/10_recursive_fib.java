public class Main {
    static int fib(int n) {
        if (n < 2) return n;                    // if1 s1, s2
        return fib(n - 1) + fib(n - 2);         // s3 (self-loop fib/1)
    }

    public static void main(String[] args) {
        System.out.println(fib(20));            // s4
    }
}
